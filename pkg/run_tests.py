"""Runs the test suite. Pass a file pattern such as `test_logic.py` to run a subset."""

import os
import sys
import unittest

if __name__ == '__main__':
    pattern = sys.argv[1] if len(sys.argv) > 1 else 'test*.py'
    start_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'tests')
    tests = unittest.TestLoader().discover(start_dir, pattern=pattern)
    result = unittest.TextTestRunner(verbosity=2).run(tests)
    # Non-zero exit status when anything failed
    sys.exit(0 if result.wasSuccessful() else 1)
