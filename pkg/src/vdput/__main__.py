import sys

from vdput.cli import main

sys.exit(main())
