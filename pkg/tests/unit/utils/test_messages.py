import colorama
import mock
import sys
import unittest

from bin.commands.utils import messages


class TestMessages(unittest.TestCase):

    @mock.patch('builtins.print')
    def test__print(self, mock_print):

        # setup
        message = 'message'
        prefix = 'a prefix:'
        file_ = sys.stdout

        # when
        messages._print(message, prefix, False, False, file_)

        # then
        mock_print.assert_called_once_with(prefix + ' ' + message, file=file_)

    @mock.patch('builtins.print')
    def test__print_noFile(self, mock_print):

        # when
        messages._print('message', 'a prefix:', False, False, None)

        # then
        mock_print.assert_called_once_with('a prefix: message')

    @mock.patch('builtins.print')
    def test__print_quiet(self, mock_print):

        # when
        messages._print('message', 'a prefix:', True, False, sys.stdout)

        # then
        mock_print.assert_not_called()

    @mock.patch('builtins.print')
    def test__print_andExit(self, mock_print):

        # when
        with self.assertRaises(SystemExit) as context:
            messages._print('message', None, False, True, sys.stderr, exit_code=3)

        # then
        self.assertEqual(context.exception.code, 3)
        mock_print.assert_called_once_with('message', file=sys.stderr)

    def test__print_messageNotAStr(self):

        # when
        with self.assertRaises(AssertionError) as context:
            messages._print(123)

        # then
        self.assertEqual(str(context.exception), 'message must be a str')

    def test__print_prefixNotAStr(self):

        # when
        with self.assertRaises(AssertionError) as context:
            messages._print('message', prefix=123)

        # then
        self.assertEqual(str(context.exception), 'prefix must be a str')

    def test__print_quietNotABool(self):

        # when
        with self.assertRaises(AssertionError) as context:
            messages._print('message', quiet='false')

        # then
        self.assertEqual(str(context.exception), 'quiet must be a bool')

    def test__print_exitCodeNotAnInt(self):

        # when
        with self.assertRaises(AssertionError) as context:
            messages._print('message', exit_code='2')

        # then
        self.assertEqual(str(context.exception), 'exit_code must be an int')

    @mock.patch('bin.commands.utils.messages._print')
    def test_error(self, mock_print):

        # when
        messages.error('the message', prefix='error prefix', exit_=False, exit_code=2)

        # then
        mock_print.assert_called_once_with(
            'the message', prefix='error prefix', exit_=False, file_=sys.stderr, exit_code=2
        )

    @mock.patch('bin.commands.utils.messages._print')
    def test_warn(self, mock_print):

        # when
        warned = messages.warn('the message', True)

        # then
        self.assertTrue(warned)
        mock_print.assert_called_once_with('the message', prefix='warn:', quiet=True, file_=sys.stderr)

    @mock.patch('bin.commands.utils.messages._print')
    def test_warn_ignoreIsTrue(self, mock_print):

        # when
        messages.warn('the message', True, True)

        # then
        mock_print.assert_not_called()

    @mock.patch('bin.commands.utils.messages._print')
    def test_alarm(self, mock_print):

        # when
        messages.alarm('product below the bound')

        # then
        mock_print.assert_called_once_with(
            colorama.Fore.RED + 'product below the bound' + colorama.Fore.RESET, prefix='alarm:', file_=sys.stderr
        )

    def test_verdict(self):

        # expect
        self.assertEqual(messages.verdict(True), colorama.Fore.GREEN + 'pass' + colorama.Fore.RESET)
        self.assertEqual(messages.verdict(False), colorama.Fore.RED + 'FAIL' + colorama.Fore.RESET)

    @mock.patch('bin.commands.utils.messages._print')
    def test_info(self, mock_print):

        # when
        messages.info('the message', True)

        # then
        mock_print.assert_called_once_with('the message', quiet=True)
