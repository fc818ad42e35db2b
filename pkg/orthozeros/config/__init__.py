"""
Configuration management.

This module loads numerical defaults and logging settings from INI files.
"""

from orthozeros.config.manager import ConfigSection, OrthoZerosConfig, config

__all__ = ['ConfigSection', 'OrthoZerosConfig', 'config']
