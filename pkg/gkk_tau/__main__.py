"""
Module entry point: python -m gkk_tau.

:return : Process exit.
:return: Exit code of gkk_tau.cli.main.
"""

import sys

from gkk_tau.cli.main import main

sys.exit(main())
