import json

import pytest

from trussalg.utils.config import Configuration


@pytest.fixture
def configuration():
    configuration = Configuration()
    configuration.register("window", description="Half-width.", default=3, type=int)
    configuration.register("seed", default=None)
    return configuration


class TestConfiguration:
    def test_defaults(self, configuration):
        assert configuration.window == 3
        assert configuration.seed is None
        assert configuration.all() == {}
        assert dir(configuration) == ["seed", "window"]

    def test_set_and_reset(self, configuration):
        configuration.window = 5
        assert configuration.window == 5
        assert configuration.all() == {"window": 5}
        configuration.reset("window")
        assert configuration.window == 3

    def test_reset_to_values(self, configuration):
        configuration.reset(window=4, seed=1)
        assert (configuration.window, configuration.seed) == (4, 1)
        configuration.reset("window", window=3)
        assert configuration.all() == {"seed": 1}
        configuration.reset(window=4)
        assert configuration.all() == {"window": 4}

    def test_type_check(self, configuration):
        with pytest.raises(ValueError, match="must be in type"):
            configuration.window = "wide"

    def test_unknown_key(self, configuration):
        with pytest.raises(KeyError):
            configuration.widget = 1
        with pytest.raises(AttributeError):
            configuration.widget  # pylint: disable=pointless-statement

    def test_method_names_are_reserved(self, configuration):
        with pytest.raises(KeyError, match="conflicts"):
            configuration.register("reset")

    def test_onchange(self, configuration, mocker):
        onchange = mocker.Mock()
        configuration.register("level", default=1, onchange=onchange)
        configuration.level = 2
        onchange.assert_called_once_with(2)
        configuration.reset("level")
        onchange.assert_called_with(1)

    def test_show(self, configuration, capsys):
        configuration.window = 6
        configuration.show()
        out = capsys.readouterr().out
        assert "window = 6 (default = 3)" in out
        assert "seed = <Not Set> (default = None)" in out
        assert "Half-width." in out

    def test_save_and_load(self, configuration, tmp_path):
        path = str(tmp_path / "nested" / "config.json")
        configuration.window = 7
        configuration.save(path)
        with open(path, encoding="utf-8") as f:
            assert json.load(f) == {"window": 7}

        fresh = Configuration()
        fresh.register("window", default=3, type=int)
        fresh.load(path)
        assert fresh.window == 7

    def test_config_path(self, configuration, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"window": 9}))
        configuration._config_path = str(path)
        assert configuration.window == 9

    def test_corrupt_config_path(self, configuration, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{")
        with pytest.raises(RuntimeError, match="cannot be loaded"):
            configuration._config_path = str(path)
