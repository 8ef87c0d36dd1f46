try:
    from ._lslab import *  # noqa: F401,F403
except ImportError:  # in-tree runs put the extension on sys.path directly
    from _lslab import *  # noqa: F401,F403
