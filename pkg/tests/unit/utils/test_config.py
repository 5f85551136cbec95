import mock
import os
import unittest

from .. import testutils
from bin.commands.utils import config, files, parse_string


class TestConfig(unittest.TestCase):

    def test_environmentKey(self):

        # expect
        self.assertEqual(config.environment_key('seed'), 'BANG_COMMANDS_SEED')
        self.assertEqual(config.environment_key('billiard.starts'), 'BANG_COMMANDS_BILLIARD_STARTS')
        self.assertEqual(config.environment_key('cover-check.threshold'), 'BANG_COMMANDS_COVER_CHECK_THRESHOLD')

    def test_flatten(self):

        # setup
        nested = {'seed': 3, 'billiard': {'starts': 8, 'gauge': 'diff'}, 'tolerances': {'billiard': 1e-4}}

        # when
        flat = config.flatten(nested)

        # then
        self.assertEqual(flat, {'seed': 3, 'billiard.starts': 8, 'billiard.gauge': 'diff', 'tolerances.billiard': 1e-4})

    @mock.patch('bin.commands.utils.files.load_json', return_value={'billiard': {'starts': 8}})
    def test_load(self, mock_loadjson):

        # when
        loaded = config.load('run.json')

        # then
        self.assertEqual(loaded, {'billiard.starts': 8})
        mock_loadjson.assert_called_once_with('run.json')

    @mock.patch('bin.commands.utils.files.load_json', return_value=[1, 2])
    def test_load_notAnObject(self, mock_loadjson):

        # when
        with self.assertRaises(files.InputError) as context:
            config.load('run.json')

        # then
        self.assertEqual(str(context.exception), "config 'run.json' must hold a JSON object")

    @mock.patch.dict(os.environ, {'BANG_COMMANDS_BILLIARD_STARTS': '12'})
    def test_getConfigValue_configWinsOverEnvironment(self):

        # expect
        self.assertEqual(config.get_config_value('billiard.starts', 64, {'billiard.starts': '5'}, int), 5)

    @mock.patch.dict(os.environ, {'BANG_COMMANDS_BILLIARD_STARTS': '12'})
    def test_getConfigValue_environment(self):

        # expect
        self.assertEqual(config.get_config_value('billiard.starts', 64, {}, int), 12)

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_getConfigValue_default(self):

        # expect
        self.assertEqual(config.get_config_value('billiard.starts', 64, None, int), 64)
        self.assertIsNone(config.get_config_value('billiard.gauge'))

    @mock.patch.dict(os.environ, {'BANG_COMMANDS_QUIET': 'yes'})
    def test_getConfigValue_asBool(self):

        # expect
        self.assertTrue(config.get_config_value('quiet', False, as_type=parse_string.as_bool))

    def test_getConfigValue_jsonBoolReturnedAsIs(self):

        # expect
        self.assertIs(config.get_config_value('quiet', False, {'quiet': True}, parse_string.as_bool), True)

    @mock.patch('bin.commands.utils.messages.error', side_effect=testutils.and_exit)
    def test_getConfigValue_cannotParse(self, mock_error):

        # when
        with self.assertRaises(SystemExit):
            config.get_config_value('billiard.starts', 64, {'billiard.starts': 'many'}, int)

        # then
        mock_error.assert_called_once_with(
            "Cannot parse value 'many' for key 'billiard.starts' using format 'int'", exit_code=2
        )

    def test_getConfigValue_asTypeNotCallable(self):

        # when
        with self.assertRaises(Exception) as context:
            config.get_config_value('key', as_type='not callable')

        # then
        self.assertEqual(str(context.exception), 'not callable is not callable')
