import logging
from pathlib import Path

from piccolo.columns import Integer, Text, Timestamp, Varchar
from piccolo.engine.sqlite import SQLiteEngine
from piccolo.table import Table

from .common import input_digest, is_unc_path
from .errors import DirectoryError, UNCPathError

log = logging.getLogger("plumb.store")


class BoundsRun(Table):
    command = Varchar(length=32)
    digest = Varchar(length=64)
    exit_code = Integer()
    report = Text()
    created = Timestamp()


TABLES = [BoundsRun]


async def register_store(path: Path, tables: list[type[Table]] = TABLES) -> SQLiteEngine:
    """Bind the archive tables to a SQLite database inside ``path``, creating them if needed.

    Args:
        path (Path): Directory holding ``plumb.sqlite``.
        tables (list[type[Table]], optional): Piccolo tables to bind. Defaults to TABLES.

    Raises:
        UNCPathError: If the path is a UNC path, which is not supported.
        DirectoryError: If the path is not an existing directory.

    Returns:
        SQLiteEngine: The engine the tables are bound to.
    """
    path = Path(path)
    if is_unc_path(path):
        raise UNCPathError(f"UNC paths are not supported, please move the archive: {path}")
    if not path.is_dir():
        raise DirectoryError(f"Archive location is not a valid directory: {path}")

    log.debug("Fetching database engine")
    db = SQLiteEngine(path=str(path / "plumb.sqlite"))
    for table_class in tables:
        table_class._meta.db = db
        await table_class.create_table(if_not_exists=True)
    log.info(f"Report archive ready at {path}")
    return db


async def save_report(command: str, input_text: str, report_json: str, exit_code: int = 0) -> int:
    """Archive one report keyed by the digest of its input; returns the row id"""
    run = BoundsRun(
        command=command,
        digest=input_digest(input_text),
        exit_code=exit_code,
        report=report_json,
    )
    await run.save()
    log.debug(f"Archived {command} report as row {run.id}")
    return run.id


async def load_reports(digest: str) -> list[dict]:
    """Archived reports for an input digest, oldest first"""
    return await (
        BoundsRun.select(BoundsRun.id, BoundsRun.command, BoundsRun.exit_code, BoundsRun.report)
        .where(BoundsRun.digest == digest)
        .order_by(BoundsRun.id)
    )
