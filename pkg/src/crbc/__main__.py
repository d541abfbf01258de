import sys

from crbc.cli import main

sys.exit(main())
