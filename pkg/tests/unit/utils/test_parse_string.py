import math
import unittest

import enum

from bin.commands.utils import parse_string


class TestEnum(enum.Enum):
    A = 'a'
    BB = 'bb'


class TestParseString(unittest.TestCase):

    def test_asBool_true(self):

        # expect
        for value in ('yes', 'YES', 'on', 'ON', 'true', 'TRUE', '1'):
            self.assertTrue(parse_string.as_bool(value))

    def test_asBool_false(self):

        # expect
        for value in ('no', 'NO', 'off', 'OFF', 'false', 'FALSE', '0'):
            self.assertFalse(parse_string.as_bool(value))

    def test_asBool_error_inputNotAStr(self):

        # when
        with self.assertRaises(AssertionError) as context:
            parse_string.as_bool(1)

        # then
        self.assertEqual('{0!r} is not a string'.format(1), str(context.exception))

    def test_asBool_error_invalidBoolRepresentation(self):

        # when
        with self.assertRaises(ValueError) as context:
            parse_string.as_bool('yup')

        # then
        self.assertEqual('{0!r} is not a boolean representation'.format('yup'), str(context.exception))

    def test_asEnum(self):

        # when
        parse_enum = parse_string.as_enum(TestEnum)

        # then
        self.assertEqual(TestEnum.A, parse_enum('a'))
        self.assertEqual(TestEnum.BB, parse_enum('bb'))

    def test_asEnum_invalidEnumValue(self):

        # expect
        with self.assertRaises(ValueError):
            parse_string.as_enum(TestEnum)('z')

    def test_asEnum_notAnEnum(self):

        # when
        with self.assertRaises(AssertionError) as context:
            parse_string.as_enum(1)

        # then
        self.assertEqual("'enum_type' must be an {!r}. Given {!r}".format(enum.Enum, int), str(context.exception))

    def test_asDelimitedList(self):

        # when
        split_list = parse_string.as_delimited_list(',')

        # then
        self.assertEqual(['a', 'b'], split_list('a,b'))
        self.assertEqual(['a b'], split_list('a b'))
        self.assertEqual([], split_list(None))

    def test_asPositiveFloat(self):

        # expect
        self.assertEqual(parse_string.as_positive_float('1e-3'), 1e-3)
        self.assertEqual(parse_string.as_positive_float(2), 2.0)

    def test_asPositiveFloat_notPositive(self):

        # expect
        for value in ('0', '-1', 'nan', 'inf', math.inf):
            with self.assertRaises(ValueError):
                parse_string.as_positive_float(value)

    def test_asPositiveFloat_notANumber(self):

        # expect
        with self.assertRaises(ValueError):
            parse_string.as_positive_float('small')

    def test_asPositiveInt(self):

        # expect
        self.assertEqual(parse_string.as_positive_int('16'), 16)
        self.assertEqual(parse_string.as_positive_int(3), 3)

    def test_asPositiveInt_invalid(self):

        # expect
        for value in ('0', '-2', '1.5', 'many', True):
            with self.assertRaises(ValueError):
                parse_string.as_positive_int(value)
