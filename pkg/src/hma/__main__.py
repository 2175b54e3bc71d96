import sys

from hma.cli import main

sys.exit(main())
