"""Console output: reports on stdout; warnings, probe alarms and errors on stderr."""

import sys

import colorama


def _print(message, prefix=None, quiet=False, exit_=False, file_=None, exit_code=1):

    assert isinstance(message, str), "message must be a str"
    assert not prefix or isinstance(prefix, str), "prefix must be a str"
    assert isinstance(quiet, bool), "quiet must be a bool"
    assert isinstance(exit_, bool), "exit must be a bool"
    assert isinstance(exit_code, int), "exit_code must be an int"

    message = prefix + ' ' + message if prefix else message
    if not quiet:
        _print_to_file(message, file_)
    if exit_:
        sys.exit(exit_code)


def _print_to_file(message, file_):
    if file_:
        print(message, file=file_)
    else:
        print(message)  # defaulting file_ to sys.stdout messes with colorama


def error(message, prefix='error:', exit_=True, exit_code=1):
    """Print an error message to stderr and optionally exit.

    :param str message: the error message to print
    :param str prefix: the prefix to print before the message
    :param bool exit_: whether or not to exit after printing
    :param int exit_code: the code to exit with
    """
    _print(message, prefix=prefix, exit_=exit_, file_=sys.stderr, exit_code=exit_code)


def warn(message, quiet=False, ignore=False):
    """Print a warning about degraded work: a sampled grid, an unconverged optimizer.

    Ignore repeated warnings by feeding warn() back into itself:
    warned = None
    for _ in range(0, 5):
        warned = warn(message, ignore=warned)

    :param str message: the warning message to print
    :param bool quiet: suppress message
    :param bool ignore: ignore this warning and print nothing
    :return bool: always returns True to indicate a warning has been issued
    """
    if not ignore:
        _print(message, prefix='warn:', quiet=quiet, file_=sys.stderr)
    return True


def alarm(message):
    """Announce a theorem or conjecture probe that found a candidate counterexample.

    Alarms are never quiet. The caller still reports the failure in its result.

    :param str message: what was found
    """
    _print(colorama.Fore.RED + message + colorama.Fore.RESET, prefix='alarm:', file_=sys.stderr)


def verdict(ok):
    """Return a colored pass/FAIL label."""

    if ok:
        return colorama.Fore.GREEN + 'pass' + colorama.Fore.RESET
    return colorama.Fore.RED + 'FAIL' + colorama.Fore.RESET


def info(message, quiet=False):
    """Print a report or table to stdout.

    :param str message: the message to print
    :param bool quiet: suppress message
    """
    _print(message, quiet=quiet)
