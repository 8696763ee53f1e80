# -*- coding: utf-8 -*-
"""
Global settings: on-disk cache, thread budget and default tolerances.

Environment variables:
 - CPX_THREADS: caps internal parallelism (default: number of cores, at most 60)
 - CPX_CACHE: directory of the joblib cache of expensive solves.
              If unset, nothing is cached on disk.
"""
import multiprocessing
import os
from pathlib import Path

from joblib import Memory

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1000
LAWSON_WEIGHT_FLOOR = 1e-300
LAWSON_CONSECUTIVE = 5
TIE_RTOL = 1e-9
CLOSURE_TOL = 1e-9
CARDINAL_TOL = 1e-8
BOUNDARY_TOL = 1e-12
MAX_THREADS = 60


def get_cache_dir():
    cachedir = os.environ.get("CPX_CACHE", "")
    if not cachedir:
        return None
    cachedir = Path(cachedir).expanduser()
    os.makedirs(cachedir, exist_ok=True)
    return cachedir


cache_memory = Memory(get_cache_dir(), verbose=0)


def get_n_threads(n_tasks=None):
    """
    Number of workers to use for an embarrassingly parallel loop.

    Arguments:
    - n_tasks: int, number of independent tasks (caps the result if provided)
    """
    n = min(multiprocessing.cpu_count(), MAX_THREADS)
    env = os.environ.get("CPX_THREADS", "")
    if env:
        try:
            n = max(1, int(env))
        except ValueError:
            raise ValueError(f"CPX_THREADS must be an integer, got '{env}'.")
    if n_tasks is not None:
        n = max(1, min(n, int(n_tasks)))
    return n
