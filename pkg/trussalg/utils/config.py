import inspect
import io
import json
import logging
import os

logger = logging.getLogger(__name__)


class ConfigurationRegistry:
    """
    A register of the configuration keys that modules of trussalg declare.

    Keys are declared at import time by the module that consumes them, so that
    `Configuration.show()` can report where each key came from.
    """

    def __init__(self):
        self._register = {}

    def register(
        self,
        key,
        description=None,
        default=None,
        onchange=None,
        type=None,  # pylint: disable=redefined-builtin
    ):
        """
        Register a configuration key.

        Args:
            key (str): The name of the configuration option.
            description (str, None): A human readable description.
            default (object): The value used while the key has not been set.
            onchange (callable, None): Called with the new value whenever the
                key is set or reset.
            type (type, tuple<type>, None): If provided, values assigned to
                the key must be instances of this type.
        """
        if key in dir(self.__class__):
            raise KeyError(
                f"Key `{key}` conflicts with a method of `{self.__class__.__name__}`."
            )
        if key in self._register:
            logger.debug(
                "Overwriting configuration key `%s` previously registered by %s.",
                key,
                self._register[key]["host"],
            )

        try:
            host = inspect.getmodule(inspect.currentframe().f_back).__name__
        except:  # pylint: disable=bare-except
            host = "unknown"

        if default is not None and type is not None:
            assert isinstance(default, type)
        self._register[key] = {
            "description": description,
            "host": host,
            "default": default,
            "onchange": onchange,
            "type": type,
        }

    def show(self):
        for key in sorted(self._register):
            desc = self._register[key]["description"] or "No description"
            print(f"{key} with default = {self._register[key]['default']}")
            print(f"\t{desc}")
            print(f"\t({self._register[key]['host']})")


class Configuration(ConfigurationRegistry):
    """
    The runtime configuration hub of trussalg.

    Configuration only tunes how much work verification does and where it
    looks for things: the integer window used for symbolic structures, the
    sampling limit, the random seed of the negative corpus and so on. Every
    value that influences a verdict is echoed into reports, so that runs stay
    reproducible.

    Retrieving an option:
    >>> config.sample_limit
    200000

    Setting an option:
    >>> config.verification_window = 6

    Reviewing the available options:
    >>> config.show()
    """

    def __init__(self, *registries, config_path=None):
        ConfigurationRegistry.__init__(self)
        for registry in registries:
            for key, props in registry.items():
                self.register(key, **props)
        self._config = {}
        self.__config_path = config_path

    def __dir__(self):
        return sorted(self._register.keys())

    @property
    def _config_path(self):
        return self.__config_path

    @_config_path.setter
    def _config_path(self, path):
        self.__config_path = os.path.expandvars(os.path.expanduser(path))
        if os.path.exists(self.__config_path):
            try:
                self.load(force=True)
            except Exception as e:  # pylint: disable=broad-exception-caught
                raise RuntimeError(
                    f"Configuration file at {self.__config_path} cannot be loaded. Perhaps try deleting it."
                ) from e

    def all(self):
        """dict: The explicitly set configuration values (defaults excluded)."""
        return self._config

    def show(self):
        for key in sorted(self._register):
            desc = self._register[key]["description"] or "No description"
            val = str(self._config.get(key, "<Not Set>"))
            print(f"{key} = {val} (default = {self._register[key]['default']})")
            print(f"\t{desc}")
            print(f"\t({self._register[key]['host']})")

    def __setattr__(self, key, value):
        if key.startswith("_"):
            object.__setattr__(self, key, value)
        elif key in self._register:
            expected = self._register[key]["type"]
            if expected is not None and value is not None:
                if not isinstance(value, expected):
                    raise ValueError(f"{key} must be in type(s) {expected}")
            if self._register[key]["onchange"] is not None:
                self._register[key]["onchange"](value)
            self._config[key] = value
        else:
            raise KeyError(f"No such configuration key `{key}`.")

    def __getattr__(self, key):
        if key.startswith("_"):
            return object.__getattribute__(self, key)
        if key in self._register:
            return self._config.get(key, self._register[key]["default"])
        raise AttributeError(f"No such configuration key `{key}`.")

    def reset(self, *keys, **target_config):
        """
        Reset the nominated keys to their defaults, or to the values passed in
        `target_config`. With no arguments every key is reset.

        >>> config.reset('verification_window')
        >>> config.reset(random_seed=1)
        """
        if not keys:
            keys = set(self._register) | set(target_config)
        target_config = {k: v for k, v in target_config.items() if k in keys}

        for key, value in target_config.items():
            if key not in self._register:
                logger.warning(
                    "Added value for configuration key `%s` which has yet to be registered.",
                    key,
                )
                self._config[key] = value
                continue
            if value == self._register[key]["default"]:
                self._config.pop(key, None)
            else:
                self._config[key] = value
            if self._register[key]["onchange"] is not None:
                self._register[key]["onchange"](getattr(self, key))

        for key in keys:
            if key in target_config or key not in self._config:
                continue
            self._config.pop(key)
            if key in self._register and self._register[key]["onchange"] is not None:
                self._register[key]["onchange"](getattr(self, key))

    def save(self, filename=None, keys=None):
        """
        Save explicitly set values as JSON.

        Args:
            filename (str, None): Target file (defaults to the autoloaded path).
            keys (iterable<str>, None): Restrict the saved keys; when given,
                the existing file is updated rather than replaced.
        """
        filename = os.path.expanduser(filename or self._config_path)
        directory = os.path.dirname(filename)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        config = {}
        if keys is not None and os.path.exists(filename):
            with io.open(filename, "r", encoding="utf-8") as f:
                config = json.load(f)
        config.update(
            {
                k: v
                for k, v in self._config.items()
                if keys is None or k in keys
            }
        )
        with io.open(filename, "w", encoding="utf-8") as f:
            f.write(json.dumps(config, ensure_ascii=False, indent=4, sort_keys=True))

    def load(self, filename=None, keys=None, force=False):
        """
        Load values previously written by `save`.

        Args:
            filename (str, None): Source file (defaults to the autoloaded path).
            keys (iterable<str>, None): Restrict the loaded keys.
            force (bool): Store the values without running type checks and
                `onchange` hooks (used at startup, before all keys are
                registered).
        """
        filename = os.path.expanduser(filename or self._config_path)
        with io.open(filename, "r", encoding="utf-8") as f:
            config = json.load(f)
        if keys is not None:
            config = {k: v for k, v in config.items() if k in keys}
        if force:
            self._config = config
        elif keys is None:
            self.reset(**config)
        else:
            self.reset(*keys, **config)


config = Configuration()
