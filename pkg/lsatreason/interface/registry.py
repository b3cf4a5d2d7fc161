"""Register configuration symbols.

Configuration files are Python expressions evaluated against the symbols
collected here (see `load_config`). Modules register their public constructors
with the `export` decorator.
"""

from typing import Any

_EXPORTED: dict[str, Any] = {}


def get_symbols() -> dict[str, Any]:
    """
    Retrieve the dictionary of exported symbols.

    Returns:
        dict[str, Any]: Exported names mapped to the symbols themselves.
    """
    return dict(_EXPORTED)


def export(symbol):
    """
    Register a symbol for use inside configuration files.

    Args:
        symbol: The class or function to register.

    Returns:
        The registered symbol, unchanged.
    """
    _EXPORTED[symbol.__name__] = symbol
    return symbol


def load_config(path: str) -> Any:
    """
    Evaluate a configuration file and return the value of its expression.

    Args:
        path (str): Path of the configuration file.

    Returns:
        Any: Whatever the configuration expression evaluates to.
    """
    with open(path, encoding="utf-8") as f:
        return parse_config(f.read())


def parse_config(text: str) -> Any:
    """
    Evaluate configuration text against the exported symbols.

    Args:
        text (str): A configuration expression.

    Returns:
        Any: Whatever the expression evaluates to.
    """
    from . import config  # noqa: F401

    return eval(text, get_symbols())
