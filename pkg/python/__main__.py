import sys

from python.app import main

sys.exit(main())
