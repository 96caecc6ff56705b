import sys

from src.sounder.cli import main

sys.exit(main())
