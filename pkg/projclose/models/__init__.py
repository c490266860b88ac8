from __future__ import annotations

from .analysis import *
from .closure import *
from .config import *
from .density import *
from .geometry import *
from .report import *
