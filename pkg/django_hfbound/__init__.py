from importlib import import_module
from typing import Any

__all__ = [
    "Alphabet",
    "BoundKind",
    "BoundReport",
    "HfCode",
    "HfError",
    "HfWord",
    "evaluate_bound",
    "sphere_profile",
    "verify_code",
]

_origins = {
    "Alphabet": ".words",
    "HfWord": ".words",
    "HfError": ".exceptions",
    "HfCode": ".codes",
    "verify_code": ".codes",
    "sphere_profile": ".spheres",
    "BoundKind": ".bounds",
    "BoundReport": ".bounds",
    "evaluate_bound": ".bounds",
}


def __getattr__(name: str) -> Any:
    if name in __all__:
        return getattr(import_module(_origins[name], __name__), name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
