import json
import os
import shutil
import tempfile
import unittest


def and_exit(*args, **kwargs):
    exit_ = kwargs.get('exit_', True)
    if exit_:
        raise SystemExit('exited')


class TempDirTestCase(unittest.TestCase):
    """Runs each test with a fresh temporary directory for input and report files."""

    def setUp(self):
        self.dirpath = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dirpath)

    def write_json(self, name, value):
        path = os.path.join(self.dirpath, name)
        with open(path, 'w') as file_:
            json.dump(value, file_)
        return path
