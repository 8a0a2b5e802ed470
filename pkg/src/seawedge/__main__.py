import sys

from seawedge.cli import main

sys.exit(main())
