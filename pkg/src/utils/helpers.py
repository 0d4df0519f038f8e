"""
Helper functions - shared file, chunking and worker-pool utilities
"""
import json
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ensure_dir(directory: str):
    """Create directory if missing"""
    if directory and not os.path.exists(directory):
        os.makedirs(directory, exist_ok=True)


def dumps_json(data: Any, indent: int = 2) -> str:
    return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False) + "\n"


def chunk_list(lst: Sequence[T], chunk_size: int) -> List[List[T]]:
    """Split a list into chunks of at most chunk_size"""
    return [list(lst[i:i + chunk_size]) for i in range(0, len(lst), chunk_size)]


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Ordered map; fn must be a module-level function when jobs > 1"""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
