import json

import pytest
from hamcrest import *

from torus_pmra.config import (
    CONFIG_ENV_VAR,
    ConfigManager,
    RunConfig,
    load_config,
    resolve_config,
)
from torus_pmra.exceptions import ConfigurationError


def a_config_file(tmp_path, name, content):
    path = tmp_path / name
    path.write_text(content if isinstance(content, str) else json.dumps(content))
    return str(path)


@pytest.fixture
def config_manager():
    manager = ConfigManager()
    yield manager
    manager.reset()


class TestResolveConfig:
    def test_defaults(self):
        assert_that(resolve_config(environ={}), is_(RunConfig()))

    def test_env_var_names_a_config_file(self, tmp_path):
        path = a_config_file(tmp_path, "env.json", {"radius": 32})

        config = resolve_config(environ={CONFIG_ENV_VAR: path})

        assert_that(config.radius, is_(32))
        assert_that(config.depth, is_(RunConfig().depth))

    def test_precedence(self, tmp_path):
        env_path = a_config_file(tmp_path, "env.json", {"radius": 32, "depth": 5})
        path = a_config_file(tmp_path, "run.json", {"radius": 16, "tol": 1e-6})

        config = resolve_config(
            flags={"radius": 8, "grid": None},
            config_path=path,
            environ={CONFIG_ENV_VAR: env_path},
        )

        assert_that(config.radius, is_(8))
        assert_that(config.tol, is_(1e-6))
        assert_that(config.depth, is_(5))
        assert_that(config.grid, is_(none()))

    def test_unknown_keys(self, tmp_path):
        path = a_config_file(tmp_path, "run.json", {"radious": 16})

        assert_that(
            calling(resolve_config).with_args(config_path=path, environ={}),
            raises(ConfigurationError),
        )

    @pytest.mark.parametrize(
        "flags", [{"tol": -1.0}, {"workers": 0}, {"grid": 1}, {"depth": "deep"}]
    )
    def test_invalid_values(self, flags):
        assert_that(
            calling(resolve_config).with_args(flags=flags, environ={}),
            raises(ConfigurationError),
        )


class TestLoadConfig:
    def test_partial_settings(self, tmp_path):
        path = a_config_file(tmp_path, "run.json", {"seed": 7, "out": "reports"})

        assert_that(load_config(path), is_({"seed": 7, "out": "reports"}))

    def test_missing_file(self, tmp_path):
        assert_that(
            calling(load_config).with_args(str(tmp_path / "missing.json")),
            raises(ConfigurationError),
        )

    @pytest.mark.parametrize("content", ["{radius: 3", "[1, 2]"])
    def test_malformed_documents(self, tmp_path, content):
        path = a_config_file(tmp_path, "run.json", content)

        assert_that(calling(load_config).with_args(path), raises(ConfigurationError))


class TestRunConfig:
    @pytest.mark.parametrize("n, grid", [(1, 256), (2, 64), (3, 16), (5, 8)])
    def test_grid_per_dimension(self, n, grid):
        assert_that(RunConfig().grid_for(n), is_(grid))

    def test_explicit_grid_wins(self):
        assert_that(RunConfig(grid=32).grid_for(3), is_(32))

    def test_overrides_skip_missing_values(self):
        config = RunConfig().with_overrides(radius=12, tol=None)

        assert_that(config.radius, is_(12))
        assert_that(config.tol, is_(RunConfig().tol))


class TestConfigManager:
    def test_is_a_singleton(self, config_manager):
        assert_that(ConfigManager(), is_(same_instance(config_manager)))

    def test_defaults_until_set(self, config_manager):
        assert_that(config_manager.get_default_config(), is_(RunConfig()))

        config_manager.set_default_config(RunConfig(workers=4))

        assert_that(ConfigManager().get_default_config().workers, is_(4))

    def test_reset(self, config_manager):
        config_manager.set_default_config(RunConfig(workers=4))

        config_manager.reset()

        assert_that(config_manager.get_default_config(), is_(RunConfig()))

    def test_rejects_other_values(self, config_manager):
        assert_that(
            calling(config_manager.set_default_config).with_args({"workers": 4}),
            raises(ConfigurationError),
        )
