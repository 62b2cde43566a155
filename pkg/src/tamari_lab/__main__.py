import sys

from tamari_lab.cli import main

sys.exit(main())
