import time

import pytest
from doublex import ProxySpy, called
from hamcrest import *

from torus_pmra.config import ConfigManager, RunConfig
from torus_pmra.infrastructure.workers import _run_in_threads, run_chunks


class Squarer:
    def square(self, x: int) -> int:
        return x * x


def slow_square(x: int) -> int:
    # later chunks finish first
    time.sleep(0.01 * (5 - x))
    return x * x


class TestRunChunks:
    def test_serial_run(self):
        squarer = ProxySpy(Squarer())

        results = run_chunks(squarer.square, [1, 2, 3], workers=1)

        assert_that(results, is_([1, 4, 9]))
        assert_that(squarer.square, called().times(3))

    def test_threads_keep_chunk_order(self):
        results = run_chunks(slow_square, range(5), workers=3)

        assert_that(results, is_([0, 1, 4, 9, 16]))

    def test_configured_worker_count(self):
        manager = ConfigManager()
        manager.set_default_config(RunConfig(workers=2))
        try:
            results = run_chunks(slow_square, [4, 3], workers=None)
        finally:
            manager.reset()

        assert_that(results, is_([16, 9]))

    def test_no_chunks(self):
        assert_that(run_chunks(slow_square, [], workers=4), is_([]))


class TestRunInThreads:
    @pytest.mark.anyio
    async def test_results_by_index(self, anyio_backend):
        results = await _run_in_threads(slow_square, [3, 1, 2], 2)

        assert_that(results, is_([9, 1, 4]))
