"""hallforge: exact Ringel-Hall and derived Hall algebras of quivers over F_p."""
from ._backend import BACKEND  # noqa: F401  (public: name of the active kernel backend)

__version__ = "0.1.0"
ENGINE_VERSION = "hallforge-0.1.0"
