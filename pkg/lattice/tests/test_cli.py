import csv
import io
import json
import math
import os
import tempfile
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from lattice.cli import EXIT_MISMATCH, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, RunConfig, run
from lattice.exceptions import DomainError
from lattice.table_cache import cache_clear


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


class RunConfigTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_defaults_from_settings(self):
        with self.settings(VLP_WORKERS=3, VLP_GRID_RATIO=1.5):
            config = RunConfig.from_options("count", {"d": -1, "xmax": 100})
        self.assertEqual(config.workers, 3)
        self.assertEqual(config.grid_ratio, 1.5)
        self.assertEqual(config.table_limit, 100)

    def test_table_limit_floors_xmax(self):
        self.assertEqual(RunConfig.from_options("count", {"xmax": 10.5}).table_limit, 10)
        RunConfig.from_options("count", {"xmax": 10.5, "limit": 10})

    def test_flag_beats_setting(self):
        with self.settings(VLP_WORKERS=3):
            config = RunConfig.from_options("count", {"workers": 2})
        self.assertEqual(config.workers, 2)

    def test_invariants(self):
        for options in ({"ratio": 1.0}, {"workers": 0}, {"limit": 10, "xmax": 20}):
            with self.assertRaises(DomainError):
                RunConfig.from_options("count", options)


class FieldsCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_info(self):
        code, out, _ = invoke("fields", "info", "--d", "-1")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertAlmostEqual(doc["residue_c"], 0.785398163, places=8)
        self.assertAlmostEqual(doc["zeta_K_2"], 1.5067030099, places=9)
        self.assertEqual(doc["w"], 4)
        self.assertIn("zeta_K_3", doc)
        self.assertIn("class_number_formula_c", doc)

    def test_tolerance_flag(self):
        code, out, _ = invoke("fields", "info", "--d", "-3", "--tol", "1e-6")
        self.assertEqual(code, EXIT_OK)
        self.assertAlmostEqual(json.loads(out)["residue_c"], math.pi / (3 * math.sqrt(3)), delta=1e-6)
        code, _, _ = invoke("fields", "info", "--d", "-3", "--tol", "0")
        self.assertEqual(code, EXIT_USAGE)

    def test_invalid_field(self):
        code, _, err = invoke("fields", "info", "--d", "4")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("d=4", err)


class SieveCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_csv(self):
        code, out, _ = invoke("sieve", "--d", "-1", "--limit", "10")
        self.assertEqual(code, EXIT_OK)
        rows = csv_rows(out)
        self.assertEqual(rows[0], ["n", "a", "b", "j"])
        self.assertEqual([r[1] for r in rows[1:]], ["1", "1", "0", "1", "2", "0", "0", "1", "1", "2"])
        self.assertEqual(rows[10], ["10", "2", "2", "9"])
        self.assertTrue(out.endswith("\n"))
        self.assertNotIn("\r", out)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "sieve.csv")
            code, out, _ = invoke("sieve", "--d", "0", "--limit", "6", "--out", path)
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(out, "")
            with open(path, encoding="utf-8") as fh:
                rows = csv_rows(fh.read())
        self.assertEqual([r[2] for r in rows[1:]], ["1", "-1", "-1", "0", "-1", "1"])


class CountCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_trivial_count(self):
        code, out, _ = invoke("count", "visible", "--d", "0", "-m", "1",
                              "--xmin", "1", "--xmax", "1000")
        self.assertEqual(code, EXIT_OK)
        rows = csv_rows(out)
        self.assertEqual(rows[0], ["x", "V", "main", "E"])
        self.assertGreater(len(rows), 10)
        self.assertTrue(all(r[1] == "1" for r in rows[1:]))

    def test_floats_round_trip(self):
        code, out, _ = invoke("count", "visible", "--d", "-1", "-m", "2",
                              "--xmin", "10", "--xmax", "500", "--ratio", "1.7")
        self.assertEqual(code, EXIT_OK)
        for x, v, main, e in csv_rows(out)[1:]:
            self.assertLessEqual(abs(float(e) - (int(v) - float(main))), 1e-9 * max(1.0, float(main)))
            self.assertEqual(float(x), float(format(float(x), ".15g")))

    def test_sprime(self):
        code, out, _ = invoke("count", "sprime", "--d", "0", "-m", "1", "-s", "2",
                              "--xmin", "30", "--xmax", "30")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(csv_rows(out)[1][:2], ["30", "19"])

    def test_ideals(self):
        code, out, _ = invoke("count", "ideals", "--d", "-1", "--xmin", "10", "--xmax", "10")
        self.assertEqual(code, EXIT_OK)
        row = csv_rows(out)[1]
        self.assertEqual(row[1], "9")
        self.assertAlmostEqual(float(row[2]), 10 * math.pi / 4, places=8)

    def test_workers_do_not_change_output(self):
        argv = ("count", "visible", "--d", "-3", "-m", "2", "--xmin", "10", "--xmax", "20000")
        single = invoke(*argv, "--workers", "1")[1]
        many = invoke(*argv, "--workers", "4")[1]
        self.assertEqual(single, many)

    def test_fractional_grid_end(self):
        code, out, _ = invoke("count", "visible", "--d", "0", "-m", "2",
                              "--xmin", "10.5", "--xmax", "10.5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(csv_rows(out)[1][1], "63")

    def test_limit_below_xmax(self):
        code, _, err = invoke("count", "visible", "--d", "0", "-m", "2",
                              "--xmin", "1", "--xmax", "100", "--limit", "50")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--limit", err)

    def test_visible_rejects_s(self):
        code, _, _ = invoke("count", "visible", "--d", "0", "-m", "2", "-s", "2",
                            "--xmin", "1", "--xmax", "10")
        self.assertEqual(code, EXIT_USAGE)


class CircleCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_stride_scan(self):
        code, out, _ = invoke("circle", "--rmax", "10")
        self.assertEqual(code, EXIT_OK)
        rows = csv_rows(out)
        self.assertEqual(rows[0], ["r", "N", "residual"])
        self.assertEqual(rows[10][:2], ["10", "37"])
        self.assertAlmostEqual(float(rows[10][2]), 37 - 10 * math.pi, places=12)

    def test_geometric_scan(self):
        code, out, _ = invoke("circle", "--rmax", "10000", "--rmin", "100", "--ratio", "10")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(csv_rows(out)), 4)


class FitCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_fit_from_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "series.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("x,E\n")
                for k in range(12):
                    x = 2 ** k
                    fh.write(f"{x},{3 * x ** 1.5}\n")
            code, out, _ = invoke("fit", "--in", path, "--xcol", "x", "--vcol", "E")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertAlmostEqual(doc["slope"], 1.5, delta=1e-9)
        self.assertEqual(doc["n_points"], 12)

    def test_fit_refused(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "short.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("x,E\n1,1\n2,2\n")
            code, _, _ = invoke("fit", "--in", path)
        self.assertEqual(code, EXIT_USAGE)


class PerronCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_reconstruction(self):
        code, out, _ = invoke("perron", "--d", "0", "--x", "5.5")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(round(doc["estimate"]), 5)
        self.assertEqual(doc["reference"], 5)
        self.assertNotIn("bound", doc)

    def test_kernel(self):
        code, out, _ = invoke("perron", "--x", "2", "--T", "1000", "--kernel")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertLessEqual(doc["abs_error"], doc["bound"] + 1e-9)

    @override_settings(VLP_PERRON_NODE_BUDGET=100)
    def test_numeric_failure(self):
        code, _, _ = invoke("perron", "--x", "3", "--T", "500", "--kernel")
        self.assertEqual(code, EXIT_NUMERIC)


class OracleCommandTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_equal(self):
        code, out, _ = invoke("oracle", "--d", "-1", "-m", "2", "-s", "1", "--xmax", "200")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertTrue(doc["equal"])
        self.assertEqual(doc["formula"], doc["brute_force"])

    def test_mismatch_exit_status(self):
        with mock.patch("lattice.counts.sprime_count", return_value=-1):
            code, out, err = invoke("oracle", "--d", "0", "-m", "2", "--xmax", "10")
        self.assertEqual(code, EXIT_MISMATCH)
        self.assertFalse(json.loads(out)["equal"])


class UsageTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_unknown_subcommand(self):
        code, _, err = invoke("plot")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("usage", err)

    def test_missing_required_flag(self):
        code, _, _ = invoke("sieve", "--d", "-1")
        self.assertEqual(code, EXIT_USAGE)

    def test_call_command_raises(self):
        with self.assertRaises(CommandError):
            call_command("fields", "info", "--d", "1", stdout=io.StringIO())
