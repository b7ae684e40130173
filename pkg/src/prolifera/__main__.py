import sys

from prolifera.cli import main

sys.exit(main())
