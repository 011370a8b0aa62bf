import sys

from gbs.cli import main

sys.exit(main())
