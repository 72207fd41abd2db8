import os
import tempfile
from pathlib import Path
from unittest import TestCase
from unittest.mock import patch

from plumb.common import chunked, get_config, is_unc_path, run_fan_out


class TestConfig(TestCase):
    @patch.dict(os.environ, {"PLUMB_CAP": "12", "PLUMB_WORKERS": "3"})
    def test_environment(self):
        cfg = get_config()
        self.assertEqual((cfg.cap, cfg.workers), (12, 3))

    @patch.dict(os.environ, {"PLUMB_CAP": "12"})
    def test_overrides_win(self):
        cfg = get_config(cap=5, workers=None, store="archive")
        self.assertEqual(cfg.cap, 5)
        self.assertEqual(cfg.store, Path("archive"))

    def test_env_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            env_file = Path(tmp) / ".env"
            env_file.write_text("PLUMB_SEED=7\n")
            with patch.dict(os.environ, {}, clear=False):
                os.environ.pop("PLUMB_SEED", None)
                self.assertEqual(get_config(env_file).seed, 7)

    def test_rejects_bad_values(self):
        with self.assertRaises(ValueError):
            get_config(cap=0)
        with self.assertRaises(ValueError):
            get_config(workers=0)

    def test_unc(self):
        self.assertFalse(is_unc_path(Path("relative")))


class TestFanOut(TestCase):
    def test_chunked(self):
        self.assertEqual(list(chunked(range(5), 2)), [[0, 1], [2, 3], [4]])

    def test_order_is_stable(self):
        items = list(range(100))
        for workers in (1, 2, 4):
            results = run_fan_out(sum, items, workers, chunk_size=7)
            self.assertEqual(results, [sum(items[i:i + 7]) for i in range(0, 100, 7)])
