import threading
from collections import OrderedDict
from typing import Any, Tuple


LOCK: threading.Lock = threading.Lock()
# (kind, d, limit) -> published, read-only table
TABLES: "OrderedDict[Tuple[str, int, int], Any]" = OrderedDict()
