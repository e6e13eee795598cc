import sys

from detsurf.cli import main

sys.exit(main())
