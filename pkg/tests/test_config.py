import pytest

from core import DEFAULT_MEM_BUDGET, Settings, parse_bytes


class TestParseBytes:
    @pytest.mark.parametrize(
        "text, value",
        [("1048576", 1 << 20), ("512M", 512 << 20), ("8G", 8 << 30), ("4k", 4096), ("2GiB", 2 << 30), (" 1T ", 1 << 40)],
    )
    def test_values(self, text, value):
        assert parse_bytes(text) == value

    @pytest.mark.parametrize("text", ["", "G", "1.5G", "-1", "12X"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_bytes(text)


class TestSettings:
    def test_defaults(self):
        s = Settings.from_env({})
        assert s.mem_budget_bytes == DEFAULT_MEM_BUDGET == 8 * 1024 ** 3
        assert s.id_width == 4
        assert s.counters is True

    def test_environment(self):
        assert Settings.from_env({"LA_MEM_BUDGET": "1M"}).mem_budget_bytes == 1 << 20

    def test_overrides_win(self):
        s = Settings.from_env({"LA_MEM_BUDGET": "1M"}, mem_budget_bytes=2048, id_width=None)
        assert s.mem_budget_bytes == 2048
        assert s.id_width == 4

    def test_process_environment(self, monkeypatch):
        monkeypatch.setenv("LA_MEM_BUDGET", "64K")
        assert Settings.from_env().mem_budget_bytes == 64 * 1024

    def test_validation(self):
        with pytest.raises(ValueError):
            Settings(id_width=2)
        with pytest.raises(ValueError):
            Settings(mem_budget_bytes=0)

    def test_with(self):
        s = Settings().with_(counters=False)
        assert s.counters is False
        assert s.mem_budget_bytes == DEFAULT_MEM_BUDGET
