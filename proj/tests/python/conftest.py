"""Make the freshly built native module and the source package importable.

ctest sets AGLAT_MODULE_DIR to the directory holding the compiled
aglat_core extension; the wrapper package lives in <repo>/python.
"""

import os
import sys

_here = os.path.dirname(os.path.abspath(__file__))
_repo = os.path.dirname(os.path.dirname(_here))

module_dir = os.environ.get("AGLAT_MODULE_DIR")
if module_dir and module_dir not in sys.path:
    sys.path.insert(0, module_dir)

_pkg_dir = os.path.join(_repo, "python")
if os.path.isdir(_pkg_dir) and _pkg_dir not in sys.path:
    sys.path.insert(0, _pkg_dir)
