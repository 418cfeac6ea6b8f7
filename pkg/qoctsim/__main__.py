# -*- coding: utf-8 -*-

import sys

from qoctsim.cli import main

sys.exit(main())
