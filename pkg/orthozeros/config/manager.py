from __future__ import annotations

import logging
import os
from collections.abc import Iterator, Mapping
from pathlib import Path

from configobj import ConfigObj, Section
from validate import Validator

from orthozeros.utils.helpers import get_data_path

logger = logging.getLogger(__name__)

SettingValue = list | str | int | float | bool


class ConfigSection(Mapping[str, object]):
    """Read-only view of a validated settings section.

    Keys read as attributes (``section.rel_tol``) or items; nested sections
    come back wrapped.
    """

    def __init__(self, section: Section) -> None:
        self._section = section

    def _wrap(self, value: object) -> SettingValue | ConfigSection:
        return ConfigSection(value) if isinstance(value, Section) else value  # type: ignore[return-value]

    def __getattr__(self, name: str) -> SettingValue | ConfigSection:
        if name.startswith('_') or name not in self._section:
            raise AttributeError(f"No setting '{name}' in [{self._section.name or 'root'}]")
        return self._wrap(self._section[name])

    def __getitem__(self, key: str) -> SettingValue | ConfigSection:
        return self._wrap(self._section[key])

    def __iter__(self) -> Iterator[str]:
        return iter(self._section)

    def __len__(self) -> int:
        return len(self._section)

    def __repr__(self) -> str:
        return f"ConfigSection({self._section.name or 'root'}: {', '.join(self._section)})"


class OrthoZerosConfig:
    """
    Settings manager for orthozeros.

    Provides dot-notation access to numerical defaults loaded from INI files
    and validated against ``data/config/config.spec``. Searches for config
    files in order of precedence: environment variable, user config
    directory, current directory, packaged defaults.

    Example:
        config = OrthoZerosConfig()
        tol = config.quadrature.rel_tol
        cap = config.quadrature.max_levels
    """

    ENV_VAR = 'ORTHO_ZEROS_CONFIG'

    def __init__(self, path: Path | str | None = None) -> None:
        """Load settings.

        Args:
            path: Explicit settings file; skips the search when given
        """
        configfile = Path(path) if path is not None else self._get_config_path()
        self._config_file_path = configfile

        spec_path = get_data_path('config', 'config.spec')
        self._config = ConfigObj(str(configfile) if configfile else None, configspec=str(spec_path), interpolation=False)
        result = self._config.validate(Validator(), preserve_errors=True)
        if result is not True:
            # Invalid values: run on configspec defaults
            logger.warning(f"Invalid settings in {configfile}: {result}; using defaults for those keys")
            self._config = ConfigObj(configspec=str(spec_path), interpolation=False)
            self._config.validate(Validator())
        self._root = ConfigSection(self._config)
        logger.debug(f"Loaded settings from: {configfile}")

    def __getattr__(self, name: str) -> SettingValue | ConfigSection:
        if name.startswith('_'):
            raise AttributeError(f"'{self.__class__.__name__}' object has no attribute '{name}'")
        return getattr(self._root, name)

    def _get_config_path(self) -> Path | None:
        """Find the settings file in order of precedence.

        Returns:
            Path of the first existing settings file, or None to use spec defaults only
        """
        search_locations = []

        if env_path := os.environ.get(self.ENV_VAR):
            search_locations.append(Path(env_path))

        search_locations.append(Path.home() / '.config' / 'orthozeros' / 'config.ini')
        search_locations.append(Path('config.ini'))
        search_locations.append(get_data_path('config', 'config.ini'))

        for config_path in search_locations:
            if config_path.exists():
                logger.debug(f"Using config file: {config_path}")
                return config_path
            logger.debug(f"Config not found at: {config_path}")

        return None

    def reload(self, path: Path | str | None = None) -> None:
        """Reload settings, optionally from an explicit file."""
        self.__init__(path)

    @property
    def config_file_path(self) -> Path | None:
        """Path to the currently loaded settings file (None when running on defaults)."""
        return self._config_file_path


config = OrthoZerosConfig()
