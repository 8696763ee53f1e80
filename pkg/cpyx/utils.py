# -*- coding: utf-8 -*-
"""
Helpers shared by every cpyx module: printing prefixes, joblib cache
validation, integer checks, tie-aware argmax and the package exceptions.
"""

import warnings

import numpy as np

#%% printing utilities

prefix = "\033[34;1m--- "
red_prefix = "\033[91;1m--- "
yellow_prefix = "\033[33;1m--- "
suffix = "\033[0m"


def repr_string(self):
    r_string = str(["." + k for k in dir(self) if "__" not in k and not k.startswith("_")])
    return r_string.replace("'", "")[1:-1]


def vprint(msg, verbose=True, color=prefix):
    "Prints msg with a colored prefix if verbose."
    if verbose:
        print(f"{color}{msg}{suffix}")


#%% function decoration utilities

def cache_validation_again(metadata):
    """
    Argument to pass to a joblib caching decorator
    to recompute the results rather than retrieve them from cache when 'again' is set to True.

    To be used as follow:
    ```
    from cpyx.gl import cache_memory

    @cache_memory.cache(cache_validation_callback=cache_validation_again)
    def my_cached_function(argument1, ..., again=False):
        ...
    ```
    WARNING the cached function MUST have an argument named 'again' for this to work.
    """
    try:
        return metadata["input_args"]["again"] == "False"
    except (KeyError, TypeError):
        warnings.warn("Joblib caching error! Not loading from cache.")
        return False


#%% Numpy and numerical computing utilities

def assert_int(x):
    return isinstance(x, (int, np.int8, np.int16,
                          np.uint8, np.uint16, np.int32,
                          np.int64, np.uint32, np.uint64)) and not isinstance(x, bool)


def log_abs(x):
    "log|x| elementwise, -inf at exact zeros and no divide warning."
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x))


def argmax_tiebreak(values, rtol=1e-9, mask=None):
    """
    Index of the maximum of values, treating every entry within rtol (relative)
    of the maximum as tied and returning the lowest tied index.

    Arguments:
    - values: 1D array of reals
    - rtol: float, relative tie tolerance
    - mask: optional boolean array, entries set to False are never returned

    Returns:
    - int, or -1 if no admissible entry is finite
    """
    values = np.asarray(values, dtype=np.float64)
    if mask is not None:
        values = np.where(mask, values, -np.inf)
    top = np.max(values) if values.size else -np.inf
    if not np.isfinite(top):
        return -1
    thresh = top - rtol * abs(top)
    return int(np.flatnonzero(values >= thresh)[0])


#%% Exceptions

class CpyxError(Exception):
    "Base class of every domain failure raised by cpyx."
    pass


class StructuralError(CpyxError):
    pass


class PivotError(CpyxError):
    pass


class UnisolvenceError(CpyxError):
    pass


class DegenerateSetError(CpyxError):
    pass


class RangeError(CpyxError, OverflowError):
    pass


class ConfigError(CpyxError):
    """Invalid run configuration. line is the 1-based line of the config
    file where the offending key appears (None if unknown)."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        loc = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{loc}")
