import math
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from lattice.analysis import (HUXLEY, exponent_bounds, fit_exponent, make_report,
                              read_series_csv)
from lattice.circle import residual_scan
from lattice.counts import count_series, geometric_grid
from lattice.exceptions import FitRefusedError
from lattice.fields import make_field
from lattice.table_cache import cache_clear


class FitTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_exact_power_law(self):
        xs = geometric_grid(10, 1e6, 1.5)
        fit = fit_exponent([(x, x ** 2) for x in xs])
        self.assertAlmostEqual(fit.slope, 2.0, delta=1e-12)
        self.assertAlmostEqual(fit.r_squared, 1.0, delta=1e-12)
        self.assertEqual(fit.dropped_zeros, 0)
        self.assertEqual(fit.n_points, len(xs))

    def test_noisy_power_law(self):
        xs = geometric_grid(10, 1e6, 1.2)
        fit = fit_exponent([(x, 5 * x ** 1.3 * (1 + 0.01 * math.sin(math.log(x)))) for x in xs])
        self.assertGreaterEqual(fit.slope, 1.25)
        self.assertLessEqual(fit.slope, 1.35)

    def test_scale_equivariance(self):
        xs = geometric_grid(2, 5000, 1.3)
        series = [(x, math.sqrt(x) + math.sin(x)) for x in xs]
        base = fit_exponent(series)
        scaled = fit_exponent([(x, 7.5 * v) for x, v in series])
        self.assertAlmostEqual(scaled.slope, base.slope, delta=1e-10)
        self.assertAlmostEqual(scaled.intercept - base.intercept, math.log(7.5), delta=1e-10)

    def test_power_reparameterisation(self):
        xs = geometric_grid(2, 5000, 1.3)
        series = [(x, x ** 0.7 * (2 + math.cos(x))) for x in xs]
        base = fit_exponent(series)
        stretched = fit_exponent([(x ** 3, v) for x, v in series])
        self.assertAlmostEqual(stretched.slope, base.slope / 3, delta=1e-10)

    def test_zeros_dropped(self):
        xs = geometric_grid(1, 1000, 1.5)
        series = [(x, 0.0 if i % 4 == 0 else x) for i, x in enumerate(xs)]
        fit = fit_exponent(series)
        self.assertEqual(fit.dropped_zeros, len(range(0, len(xs), 4)))
        self.assertAlmostEqual(fit.slope, 1.0, delta=1e-12)

    def test_too_few_points(self):
        with self.assertRaises(FitRefusedError):
            fit_exponent([(x, x) for x in range(1, 8)])
        with self.assertRaises(FitRefusedError):
            fit_exponent([(x, 0 if x < 5 else x) for x in range(1, 12)])

    def test_unsorted(self):
        with self.assertRaises(FitRefusedError):
            fit_exponent([(x, x) for x in (1, 2, 3, 5, 4, 6, 7, 8, 9)])


class CsvTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_read_columns(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "series.csv")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("x,V,main,E\n1,1,0.5,0.5\n2,3,2.0,1.0\n")
            self.assertEqual(read_series_csv(path, "x", "E"), [(1.0, 0.5), (2.0, 1.0)])
            with self.assertRaises(FitRefusedError):
                read_series_csv(path, "x", "residual")


class BoundsTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_gaussian_pairs(self):
        bounds = exponent_bounds(-1, 2, 2, 1, "visible")
        self.assertEqual(bounds["bound_conditional"], 1.5)
        self.assertEqual(bounds["bound_window"], [1.25, 1 + HUXLEY])
        self.assertAlmostEqual(bounds["bound_window"][1], 1.3149, places=4)
        self.assertTrue(bounds["bound_window_log"])
        self.assertEqual(bounds["bound_unconditional"], 1.5)

    def test_rational_triples(self):
        bounds = exponent_bounds(0, 1, 3, 1, "visible")
        self.assertEqual(bounds["bound_unconditional"], 2)
        self.assertEqual(bounds["bound_conditional"], 2.5)
        self.assertNotIn("bound_window", bounds)

    def test_square_free_window_is_not_asserted(self):
        bounds = exponent_bounds(-1, 2, 1, 2, "sprime")
        self.assertEqual(bounds["bound_conditional"], 0.75)
        self.assertFalse(bounds["bound_window_asserted"])

    def test_ideal_counts(self):
        bounds = exponent_bounds(-1, 2, 1, 1, "ideals")
        self.assertEqual(bounds["bound_conditional"], 0.5)
        self.assertEqual(bounds["bound_window"], [0.25, HUXLEY])

    def test_trivial_count_has_no_bound(self):
        self.assertEqual(exponent_bounds(2, 2, 1, 1, "visible"), {})


class ReportTests(SimpleTestCase):
    def setUp(self):
        cache_clear()

    def test_visible_report(self):
        f = make_field(-1)
        series = count_series(f, 2, 1, geometric_grid(100, 20_000, 1.25))
        fit = fit_exponent(zip(series.xs, series.errors))
        report = make_report(series, fit)
        self.assertEqual(report["field"], "Q(sqrt(-1))")
        self.assertEqual(report["bound_conditional"], 1.5)
        self.assertEqual(report["bound_window"], [1.25, 1 + HUXLEY])
        self.assertEqual(report["grid"]["points"], len(series.xs))
        self.assertIn("within_ceiling", report)

    def test_circle_report(self):
        scan = residual_scan(100_000, stride=5000)
        fit = fit_exponent(zip(scan.r_values, scan.residuals))
        report = make_report(scan, fit)
        self.assertEqual(report["kind"], "circle")
        self.assertEqual(report["bound_window"], [0.25, HUXLEY])
        self.assertAlmostEqual(report["ceiling"], HUXLEY + 0.15)

    def test_rational_cubes_report(self):
        series = count_series(make_field(0), 3, 1, geometric_grid(10, 10_000, 1.5))
        report = make_report(series, fit_exponent(zip(series.xs, series.errors)))
        self.assertEqual(report["bound_unconditional"], 2)
        self.assertEqual(report["bound_conditional"], 2.5)
        self.assertTrue(np.isfinite(report["fit"]["slope"]))
