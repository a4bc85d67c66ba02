from lattice.fields import make_field
from lattice.sieve import build_coefficients, build_moebius

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "Dump a_K(n), b_K(n) and j_K(n) for 1 <= n <= limit as CSV."
    name = "sieve"

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument("--limit", type=int, required=True)
        self.add_output_arguments(parser, workers=True)

    def perform(self, config, **options):
        field = make_field(config.d)
        coefficients = build_coefficients(field, config.limit, workers=config.workers)
        moebius = build_moebius(field, config.limit, coefficients=coefficients)
        a = coefficients.a.tolist()
        b = moebius.b.tolist()
        j = coefficients.j_cum.tolist()
        rows = ((n, a[n], b[n], j[n]) for n in range(1, config.limit + 1))
        self.emit_csv(config, ("n", "a", "b", "j"), rows)
