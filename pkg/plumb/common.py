import asyncio
import hashlib
import logging
import os
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from itertools import islice
from pathlib import Path
from typing import TypeVar

from dotenv import load_dotenv

log = logging.getLogger("plumb.common")

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_CAP = 20
DEFAULT_WORKERS = 1
DEFAULT_SEED = 20100
CHUNK_SIZE = 64


@dataclass(frozen=True)
class PlumbConfig:
    cap: int = DEFAULT_CAP
    workers: int = DEFAULT_WORKERS
    seed: int = DEFAULT_SEED
    store: Path | None = None


def get_config(env_file: Path | None = None, **overrides) -> PlumbConfig:
    """Build the run configuration from the environment.

    Values come from ``PLUMB_*`` variables (optionally loaded from a ``.env`` file),
    then from keyword overrides whose value is not None.

    Args:
        env_file (Path | None, optional): Explicit dotenv file. Defaults to the nearest ``.env``.
        **overrides: ``cap``, ``workers``, ``seed`` or ``store``.

    Raises:
        ValueError: If the cap or worker count is below 1.

    Returns:
        PlumbConfig: The frozen configuration.
    """
    load_dotenv(env_file, override=False)
    store = os.environ.get("PLUMB_STORE")
    values = {
        "cap": int(os.environ.get("PLUMB_CAP", DEFAULT_CAP)),
        "workers": int(os.environ.get("PLUMB_WORKERS", DEFAULT_WORKERS)),
        "seed": int(os.environ.get("PLUMB_SEED", DEFAULT_SEED)),
        "store": Path(store) if store else None,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = Path(value) if key == "store" else value
    if values["cap"] < 1:
        raise ValueError(f"Enumeration cap must be at least 1, got {values['cap']}")
    if values["workers"] < 1:
        raise ValueError(f"Worker count must be at least 1, got {values['workers']}")
    return PlumbConfig(**values)


def is_unc_path(path: Path) -> bool:
    """Check if path is a UNC path"""
    return path.is_absolute() and str(path).startswith("\\\\")


def input_digest(text: str) -> str:
    """SHA-256 of the input with line endings and trailing blanks normalized"""
    lines = [line.rstrip() for line in text.strip().splitlines()]
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def chunked(items: Iterable[T], size: int = CHUNK_SIZE) -> Iterator[list[T]]:
    iterator = iter(items)
    while chunk := list(islice(iterator, size)):
        yield chunk


async def fan_out(
    func: Callable[[list[T]], R],
    items: Iterable[T],
    workers: int,
    chunk_size: int = CHUNK_SIZE,
) -> list[R]:
    """Evaluate ``func`` on contiguous chunks of ``items`` in worker threads.

    Results are returned in chunk order regardless of completion order, so any
    reduction over them is independent of the worker count.
    """
    gate = asyncio.Semaphore(workers)

    async def _run(index: int, chunk: list[T]) -> tuple[int, R]:
        async with gate:
            log.debug(f"Evaluating chunk {index} ({len(chunk)} items)")
            return index, await asyncio.to_thread(func, chunk)

    tasks = [_run(i, chunk) for i, chunk in enumerate(chunked(items, chunk_size))]
    done = await asyncio.gather(*tasks)
    return [result for _, result in sorted(done, key=lambda pair: pair[0])]


def run_fan_out(
    func: Callable[[list[T]], R],
    items: Iterable[T],
    workers: int,
    chunk_size: int = CHUNK_SIZE,
) -> list[R]:
    """Blocking wrapper around :func:`fan_out`; single worker runs inline"""
    if workers <= 1:
        return [func(chunk) for chunk in chunked(items, chunk_size)]
    return asyncio.run(fan_out(func, items, workers, chunk_size))
