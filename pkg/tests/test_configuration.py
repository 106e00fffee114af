import pytest

from extroot.cli.monitor import RunMonitor
from extroot.configuration import ExtrootConfig, load_config
from extroot.constants import DEFAULT_PRECISION_CEILING
from extroot.errors import InputError


@pytest.fixture
def clean_environment(monkeypatch):
    monkeypatch.delenv("EXTROOT_PREC_CEILING", raising=False)
    monkeypatch.delenv("EXTROOT_THREADS", raising=False)
    return monkeypatch


class TestLoadConfig:
    def test_defaults(self, clean_environment):
        config = load_config()
        assert config == ExtrootConfig()
        assert config.precision_ceiling == DEFAULT_PRECISION_CEILING
        assert not config.timing

    def test_overrides_skip_none(self, clean_environment):
        config = load_config({"threads": 4, "seed": None, "output": "pretty"})
        assert (config.threads, config.seed, config.output) == (4, 0, "pretty")

    def test_environment_fallback(self, clean_environment):
        clean_environment.setenv("EXTROOT_PREC_CEILING", "4096")
        clean_environment.setenv("EXTROOT_THREADS", "2")
        config = load_config()
        assert (config.precision_ceiling, config.threads) == (4096, 2)

    def test_explicit_override_beats_environment(self, clean_environment):
        clean_environment.setenv("EXTROOT_THREADS", "2")
        assert load_config({"threads": 8}).threads == 8
        assert load_config(use_environment=False).threads == 1

    def test_blank_environment_ignored(self, clean_environment):
        clean_environment.setenv("EXTROOT_THREADS", "  ")
        assert load_config().threads == 1

    def test_bad_environment(self, clean_environment):
        clean_environment.setenv("EXTROOT_PREC_CEILING", "lots")
        with pytest.raises(InputError):
            load_config()

    @pytest.mark.parametrize(
        "overrides",
        [
            {"precision_ceiling": 32},
            {"start_prec": 1},
            {"threads": 0},
            {"output": "yaml"},
            {"diagnostics_prec": 8},
            {"threads": "many"},
            {"unknown_key": 1},
        ],
    )
    def test_invalid(self, clean_environment, overrides):
        with pytest.raises(InputError):
            load_config(overrides)


class TestRunMonitor:
    def test_stage_accounting(self):
        monitor = RunMonitor()
        for _ in range(3):
            with monitor.stage("count"):
                pass
        metrics = monitor.metrics("count")
        assert metrics.calls == 3
        assert metrics.max_seconds <= metrics.total_seconds
        assert monitor.metrics("isolate") is None

    def test_stage_recorded_on_error(self):
        monitor = RunMonitor()
        with pytest.raises(RuntimeError):
            with monitor.stage("degree"):
                raise RuntimeError("boom")
        assert monitor.metrics("degree").calls == 1

    def test_summary(self):
        monitor = RunMonitor()
        with monitor.stage("grid"):
            pass
        summary = monitor.summary()
        assert list(summary["stages"]) == ["grid"]
        assert summary["stages"]["grid"]["calls"] == 1
        assert summary["total_seconds"] >= 0
