"""Utility module

Configuration handling, output folders and logging setup shared by the command line front end and
the scripts.

"""
import copy
import logging
import os

import yaml

from fitdim_utils.exceptions import ConfigError
from fitdim_utils.polyring import CoefficientField, MonomialOrder

DEFAULTS = {
    'field': "Fp(32003)",
    'order': "grevlex",
    'random': {
        'vars': 3,
        'maxdeg': 2,
        'maxrank': 3,
        'len': 4,
        'blocks': 3,
        'basis_changes': 4,
        },
    'timeout_ms': None,
    'workers': 1,
    'database': None,
    'log_level': "WARNING",
    'output': {
        'suite': "suite",
        },
    'acceptance': {
        'seed': 2024,
        'random': 200,
        'koszul': 50,
        },
    }


class Config:
    """Configuration class

    Used as a container for configurations and to load the configuration data from a configuration
    yaml file. Values of the file are merged on top of :data:`DEFAULTS`.

    Attributes:
        cfg (dict): Configuration dictionary.

    """
    def __init__(self):
        self.cfg = copy.deepcopy(DEFAULTS)

    def load_config(self, config_file):
        """Loads the configuration and saves it to object

        Args:
            config_file (str): Path to configuration file.

        """
        cfg_dict = self._open_config_file(config_file)
        self._save_config(cfg_dict)

    def _save_config(self, cfg):
        self.cfg = _merge(self.cfg, cfg)

    @staticmethod
    def _open_config_file(config_file):
        try:
            with open(config_file, encoding="utf-8") as cfg_file:
                cfg = yaml.load(cfg_file, Loader=yaml.SafeLoader)
        except OSError as err:
            raise ConfigError(f"Can not read configuration file {config_file}: {err}") from err
        except yaml.YAMLError as err:
            raise ConfigError(f"Invalid yaml in {config_file}: {err}") from err
        if cfg is None:
            return {}
        if not isinstance(cfg, dict):
            raise ConfigError(f"Configuration file {config_file} must contain a mapping")
        return cfg


def get_cfg(cfg_file=None):
    """Get configuration

    Loads the configuration from a yaml file and checks the values. Without a file, the defaults
    are returned.

    Args:
        cfg_file (str): Path to configuration file or None.

    Returns:
        (dict): Configuration loaded into a dictionary.

    """
    config = Config()
    if cfg_file is not None:
        config.load_config(cfg_file)
    check_cfg(config.cfg)
    return config.cfg


def check_cfg(cfg):
    """Raise ConfigError for invalid configuration values"""
    try:
        CoefficientField.from_string(str(cfg['field']))
    except ValueError as err:
        raise ConfigError(f"Invalid field '{cfg['field']}': {err}") from err
    if cfg['order'] not in (MonomialOrder.LEX, MonomialOrder.GREVLEX):
        raise ConfigError(f"Unknown monomial order '{cfg['order']}'")
    for key, minimum in (('vars', 1), ('maxdeg', 1), ('maxrank', 1), ('len', 0), ('blocks', 1),
                         ('basis_changes', 0)):
        value = cfg['random'][key]
        if not isinstance(value, int) or value < minimum:
            raise ConfigError(f"random: {key} must be an integer >= {minimum}, got {value!r}")
    if cfg['timeout_ms'] is not None and (not isinstance(cfg['timeout_ms'], int) or
                                          cfg['timeout_ms'] <= 0):
        raise ConfigError(f"timeout_ms must be a positive integer, got {cfg['timeout_ms']!r}")
    if not isinstance(cfg['workers'], int) or cfg['workers'] < 1:
        raise ConfigError(f"workers must be a positive integer, got {cfg['workers']!r}")
    if not isinstance(logging.getLevelName(str(cfg['log_level']).upper()), int):
        raise ConfigError(f"Unknown log level '{cfg['log_level']}'")


def setup_logging(level="WARNING"):
    """Configure the root logger once, writing to stderr"""
    logging.basicConfig(level=str(level).upper(),
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def make_folder(output, *subfolders):
    """Make output folder

    Given a folder, this function creates the given subdirectories below it.

    Args:
        output (str): Path at which the output folder is created.
        *subfolders (str): Names of nested subfolders.

    Returns:
        (str):
            Path to output folder.

    """
    for sub in subfolders:
        output = output + os.sep + str(sub) + os.sep
    try:
        os.makedirs(output)
    except FileExistsError:
        pass
    return os.path.normpath(output) + os.sep


def _merge(base, update):
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged
