import argparse


def dict_set(delimiter):
    """Return a DictSet action for the specified delimiter.

    :param str delimiter: the character separating keys and value
    """

    class DictSet(argparse.Action):
        """An action that collects all values into a dict.

        Values are defined as <key><delimiter><value>. All values for a given key are collected into a list. Repeated
        uses of the option accumulate.
        """

        def __call__(self, parser, namespace, values, option_string=None):
            result = dict(getattr(namespace, self.dest, None) or {})
            for current_value in values if values else []:
                if delimiter not in current_value:
                    parser.error('{0!r} is not of the form <key>{1}<value>'.format(current_value, delimiter))
                key, value = current_value.split(delimiter, 1)
                if key not in result:
                    result[key] = []
                result[key] += [value]
            setattr(namespace, self.dest, result)
    return DictSet
