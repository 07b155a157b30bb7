import sys

from unitoc.cli import main

sys.exit(main())
