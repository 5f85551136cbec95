"""JSON reading and writing for bodies, planks, fields, parameters and reports."""

import json
import math


class InputError(Exception):
    """A file is missing, unreadable, or does not follow its JSON schema."""

    def __init__(self, message):
        super(InputError, self).__init__(message)
        self.message = message

    def __str__(self):
        return self.message


def _reject_constant(name):
    raise InputError('non-finite number {0!r} is not allowed'.format(name))


def parse_json(text, source='<string>'):
    """Parse JSON text, rejecting NaN and Infinity.

    :param str text: the JSON text
    :param str source: name used in diagnostics

    :return: the parsed value
    """

    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as e:
        raise InputError('cannot parse {0}: {1}'.format(source, e))


def load_json(path):
    """Read and parse a JSON file.

    :param str path: the file path

    :return: the parsed value
    """

    try:
        with open(path) as file_:
            text = file_.read()
    except (IOError, OSError) as e:
        raise InputError('cannot read {0!r}: {1}'.format(path, e.strerror or e))
    return parse_json(text, repr(path))


def dumps(value):
    """Serialize a report deterministically.

    :param value: a JSON-compatible value (numpy scalars and arrays are converted)

    :return str: the serialized text, keys sorted, ending in a newline
    """

    return json.dumps(_plain(value), sort_keys=True, indent=2, allow_nan=False) + '\n'


def dump_json(value, path):
    """Write a report to a file.

    :param value: a JSON-compatible value
    :param str path: destination path
    """

    with open(path, 'w') as file_:
        file_.write(dumps(value))


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'tolist'):
        return _plain(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def require_finite_vector(value, name):
    """Validate a JSON list of finite numbers.

    :param value: the parsed JSON value
    :param str name: field name for diagnostics

    :return list: the list of floats
    """

    if not isinstance(value, list) or not value:
        raise InputError('{0!r} must be a nonempty list of numbers'.format(name))
    result = []
    for entry in value:
        if isinstance(entry, bool) or not isinstance(entry, (int, float)) or not math.isfinite(entry):
            raise InputError('{0!r} must contain finite numbers. Given: {1!r}'.format(name, entry))
        result.append(float(entry))
    return result


def require_finite_number(value, name):
    """Validate a single finite JSON number."""

    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise InputError('{0!r} must be a finite number. Given: {1!r}'.format(name, value))
    return float(value)
