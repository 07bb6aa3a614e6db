import sys

from diskshrink.cli import main

sys.exit(main())
