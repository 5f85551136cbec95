"""Run configuration lookup: a loaded run.json mapping, then the environment, then a default."""

import os

from . import files, messages

ENVIRONMENT_PREFIX = 'BANG_COMMANDS_'


def environment_key(key):
    """Return the environment variable name for a dotted config key.

    :param str key: a dotted key such as 'billiard.starts'

    :return str: the variable name, e.g. BANG_COMMANDS_BILLIARD_STARTS
    """

    assert isinstance(key, str), "'key' must be a str. Given: " + type(key).__name__
    return ENVIRONMENT_PREFIX + key.replace('.', '_').replace('-', '_').upper()


def flatten(mapping, prefix=''):
    """Flatten nested dicts into dotted keys.

    :param dict mapping: a nested mapping as loaded from run.json
    :param str prefix: prefix applied to every key

    :return dict: a flat mapping of dotted keys to leaf values
    """

    flat = {}
    for key, value in mapping.items():
        dotted = prefix + str(key)
        if isinstance(value, dict):
            flat.update(flatten(value, dotted + '.'))
        else:
            flat[dotted] = value
    return flat


def load(path):
    """Load a run configuration file.

    :param str path: path to a JSON object

    :return dict: the flattened configuration
    """

    loaded = files.load_json(path)
    if not isinstance(loaded, dict):
        raise files.InputError('config {0!r} must hold a JSON object'.format(path))
    return flatten(loaded)


def get_config_value(key, default=None, config=None, as_type=str):
    """Retrieve a configuration value.

    :param str key: the dotted value key
    :param default: a default to return if no value is found
    :param dict config: a flattened configuration mapping to search first
    :param callable as_type: a callable, built-in type, or class object used to convert the result

    :return: the configuration value
    """

    assert isinstance(key, str), "'key' must be a str. Given: " + type(key).__name__
    assert config is None or isinstance(config, dict), "'config' must be a dict. Given: " + type(config).__name__

    if not hasattr(as_type, '__call__') and not hasattr(as_type, '__bases__'):
        raise Exception('{} is not callable'.format(as_type))

    if config and key in config:
        value = config[key]
    else:
        value = os.environ.get(environment_key(key))

    if value is None or value == '':
        return default
    if isinstance(value, (bool, list, dict)):
        return value
    try:
        return as_type(value)
    except (TypeError, ValueError):
        messages.error(
            'Cannot parse value {0!r} for key {1!r} using format {2!r}'.format(
                value, key, getattr(as_type, '__name__', repr(as_type))
            ),
            exit_code=2
        )
