from lattice.fields import make_field
from lattice.perron import kernel_quadrature, perron_j_reconstruction

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "Perron reconstruction of j_K(x) on Re(s) = 2 (or the bare kernel with --kernel)."
    name = "perron"

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, default=0)
        parser.add_argument("--x", type=float, required=True)
        parser.add_argument("--T", type=float, default=None, help="truncation height (default x^3)")
        parser.add_argument("--kernel", action="store_true",
                            help="integrate x^s / s alone instead of reconstructing j_K")
        self.add_output_arguments(parser)

    def perform(self, config, **options):
        x, T = options["x"], options["T"]
        if options["kernel"]:
            result = kernel_quadrature(x, T if T is not None else 1000.0)
        else:
            result = perron_j_reconstruction(make_field(config.d), x, T)
        doc = result.as_dict()
        if doc.get("bound") is None:
            del doc["bound"]
        self.emit_json(config, doc)
