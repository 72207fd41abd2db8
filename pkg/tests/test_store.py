import tempfile
from pathlib import Path
from unittest import TestCase

from piccolo.engine.sqlite import SQLiteEngine
from piccolo.utils.sync import run_sync

from plumb.bounds import graph_report
from plumb.cli import main
from plumb.common import input_digest
from plumb.errors import DirectoryError
from plumb.seifgraph import parse_graph
from plumb.store import load_reports, register_store, save_report

from tests.fixtures import SEVEN_FIVE_GRAPH


class TestStore(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_register_store(self):
        result = run_sync(register_store(self.dir))
        self.assertIsInstance(result, SQLiteEngine, "Should return a SQLiteEngine instance")
        self.assertTrue((self.dir / "plumb.sqlite").exists(), "Database file not created")

    def test_register_twice(self):
        run_sync(register_store(self.dir))
        run_sync(register_store(self.dir))

    def test_not_a_directory(self):
        file_path = self.dir / "file.txt"
        file_path.write_text("x")
        with self.assertRaises(DirectoryError):
            run_sync(register_store(file_path))

    def test_save_and_load(self):
        run_sync(register_store(self.dir))
        report = graph_report(parse_graph(SEVEN_FIVE_GRAPH)).to_json()
        row_id = run_sync(save_report("graph-bounds", SEVEN_FIVE_GRAPH, report))
        rows = run_sync(load_reports(input_digest(SEVEN_FIVE_GRAPH)))
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["id"], row_id)
        self.assertEqual(rows[0]["report"], report)
        self.assertEqual(run_sync(load_reports("0" * 64)), [])

    def test_digest_ignores_trailing_whitespace(self):
        self.assertEqual(input_digest("vertex a \n\n"), input_digest("vertex a"))

    def test_cli_archives(self):
        path = self.dir / "75.graph"
        path.write_text(SEVEN_FIVE_GRAPH, encoding="utf-8")
        self.assertEqual(main(["graph-bounds", str(path), "--store", str(self.dir)]), 0)
        run_sync(register_store(self.dir))
        rows = run_sync(load_reports(input_digest(SEVEN_FIVE_GRAPH)))
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["command"], "graph-bounds")
