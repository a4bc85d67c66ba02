from lattice.circle import residual_scan, scan_radii
from lattice.counts import geometric_grid

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "Gauss circle counts N(r) and residuals N(r) - pi r as CSV r,N,residual."
    name = "circle"

    def add_arguments(self, parser):
        parser.add_argument("--rmax", type=int, required=True)
        parser.add_argument("--stride", type=int, default=1)
        parser.add_argument("--rmin", type=float, default=None,
                            help="scan a geometric grid from rmin instead of a stride")
        parser.add_argument("--ratio", type=float, default=None)
        self.add_output_arguments(parser, workers=True)

    def perform(self, config, **options):
        if options["rmin"] is not None:
            radii = geometric_grid(options["rmin"], options["rmax"], config.grid_ratio)
            scan = scan_radii(radii, workers=config.workers)
        else:
            scan = residual_scan(options["rmax"], options["stride"])
        self.emit_csv(config, ("r", "N", "residual"), scan.rows())
