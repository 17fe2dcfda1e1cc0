import json

import pytest
from hamcrest import *

from torus_pmra.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from torus_pmra.config import CONFIG_ENV_VAR, ConfigManager
from torus_pmra.ktheory import ModuleDescriptor, class_of_module
from torus_pmra.serializers import JsonSerializer

DIAG_22 = "[[2,0],[0,2]]"
DIAG_222 = "[[2,0,0],[0,2,0],[0,0,2]]"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    yield
    ConfigManager().reset()


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.integrationtest
class TestCosetsCommand:
    def test_writes_csv_rows(self, capsys):
        code, out = run(capsys, "cosets", "--matrix", DIAG_22, "--level", "2")

        lines = out.strip().splitlines()
        assert_that(code, is_(EXIT_PASS))
        assert_that(lines, has_length(17))
        assert_that(lines[0], is_("index,v1,v2"))

    def test_json_output_file(self, capsys, tmp_path):
        path = tmp_path / "cosets.json"

        code, _ = run(
            capsys, "cosets", "--matrix", DIAG_22, "--level", "1", "--out", str(path)
        )

        document = json.loads(path.read_text())
        assert_that(code, is_(EXIT_PASS))
        assert_that(document["reps"], is_([[0, 0], [1, 0], [0, 1], [1, 1]]))

    def test_output_is_byte_identical_across_runs(self, capsys):
        argv = ["cosets", "--matrix", "[[2,1],[0,3]]", "--level", "2"]

        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)

        assert_that(first, is_(second))

    def test_singular_matrices_are_usage_errors(self, capsys):
        code, out = run(capsys, "cosets", "--matrix", "[[1,2],[2,4]]", "--level", "1")

        document = json.loads(out)
        assert_that(code, is_(EXIT_USAGE))
        assert_that(document["schema"], is_(1))
        assert_that(document["error"]["type"], is_("SingularMatrix"))

    def test_malformed_matrices(self, capsys):
        code, _ = run(capsys, "cosets", "--matrix", "[[2,0]", "--level", "1")

        assert_that(code, is_(EXIT_USAGE))

    def test_invalid_config_files(self, capsys, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"radious": 1}')

        code, out = run(
            capsys,
            "cosets",
            "--matrix",
            DIAG_22,
            "--level",
            "1",
            "--config",
            str(path),
        )

        assert_that(code, is_(EXIT_USAGE))
        assert_that(json.loads(out)["error"]["type"], is_("ConfigurationError"))


@pytest.mark.integrationtest
class TestK0Commands:
    def test_sl3_embedding(self, capsys):
        code, out = run(capsys, "k0", "sl3-embed", "1", "2", "3", "5")

        document = json.loads(out)
        assert_that(code, is_(EXIT_PASS))
        assert_that(document, has_entries(kind="k0_sl3_embed", passed=True))
        assert_that(document["cofactors_verified"], is_(True))

    def test_dilate(self, capsys):
        argv = ["k0", "dilate", "--matrix", DIAG_222, "--q", "1", "--twists", "0", "1"]

        code, out = run(capsys, *argv)

        document = json.loads(out)
        assert_that(code, is_(EXIT_PASS))
        assert_that(document["dilated"], has_entries(q=8, twists=[0, 2]))

    def test_levels(self, capsys):
        code, out = run(
            capsys,
            "k0",
            "levels",
            "--matrix",
            DIAG_222,
            "--q",
            "1",
            "--twists",
            "0",
            "1",
            "--level",
            "2",
        )

        assert_that(code, is_(EXIT_PASS))
        assert_that(json.loads(out), has_entries(schema=1, kind="k0_levels"))

    def test_class_with_module_conjugator(self, capsys):
        swap = "[[0,1],[1,0]]"
        expected = class_of_module(
            ModuleDescriptor(q=3, twists=(2,), conjugator=((0, 1), (1, 0)))
        )

        code, out = run(
            capsys,
            "k0",
            "class",
            "--q",
            "3",
            "--twists",
            "2",
            "--module-conjugator",
            swap,
        )

        document = json.loads(out)
        assert_that(code, is_(EXIT_PASS))
        assert_that(document["module"]["conjugator"], is_([[0, 1], [1, 0]]))
        assert_that(
            document["k_class"], is_(json.loads(JsonSerializer().serialize(expected)))
        )

    def test_dilate_keeps_both_conjugators_apart(self, capsys):
        code, out = run(
            capsys,
            "k0",
            "dilate",
            "--matrix",
            "[[2,0],[0,4]]",
            "--conjugator",
            "[[1,-1],[0,1]]",
            "--q",
            "1",
            "--twists",
            "1",
            "--module-conjugator",
            "[[1,0],[0,1]]",
            "--depth",
            "3",
        )

        document = json.loads(out)
        assert_that(code, is_(EXIT_PASS))
        assert_that(document["spec"], has_entries(form="conjugated", det=8))
        assert_that(document["spec"]["conjugator"], is_([[1, -1], [0, 1]]))
        assert_that(document["module"]["conjugator"], is_([[1, 0], [0, 1]]))
        assert_that(document["dilated"], has_entries(q=8, twists=[1]))

    def test_missing_subcommand(self, capsys):
        code, _ = run(capsys, "k0")

        assert_that(code, is_(EXIT_USAGE))


@pytest.mark.integrationtest
class TestVerifyCommands:
    def test_scaling_function(self, capsys):
        code, out = run(capsys, "verify", "phi", "--d", "2")

        assert_that(code, is_(EXIT_PASS))
        assert_that(json.loads(out), has_entries(kind="scaling_function", passed=True))

    def test_filter_bank(self, capsys):
        code, out = run(capsys, "verify", "filters", "--d", "3")

        assert_that(code, is_(EXIT_PASS))
        assert_that(json.loads(out), has_entries(kind="filter_bank", passed=True))

    def test_constants_are_not_summable(self, capsys):
        code, out = run(
            capsys,
            "verify",
            "xi",
            "--section",
            "constant",
            "--grid",
            "16",
            "--radius",
            "8",
        )

        assert_that(code, is_(EXIT_FAIL))
        assert_that(json.loads(out), has_entries(kind="xi_membership", passed=False))

    def test_frame(self, capsys):
        code, out = run(capsys, "verify", "frame", "--grid", "64", "--radius", "8")

        document = json.loads(out)
        assert_that(code, is_(EXIT_PASS))
        assert_that(document, has_entries(kind="frame_levels", passed=True))
        assert_that(document["levels"], has_length(3))

    def test_refinement_needs_a_haar_section(self, capsys):
        code, _ = run(capsys, "verify", "refine", "--section", "bandlimited")

        assert_that(code, is_(EXIT_USAGE))
