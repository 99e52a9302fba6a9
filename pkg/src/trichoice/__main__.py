import sys

from trichoice.cli import main

sys.exit(main())
