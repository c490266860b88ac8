from __future__ import annotations

# models first: its star import would otherwise shadow the closure and density modules
from .models import *
from .closure import *
from .density import *
from .enums import *
from .exceptions import *
from .lab import *
from .projective import *
from .store import *
from .subplane import *
