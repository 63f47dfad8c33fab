import sys

from fasratio.cli import main

sys.exit(main())
