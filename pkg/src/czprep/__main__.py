import sys

from czprep.cli import main

sys.exit(main())
