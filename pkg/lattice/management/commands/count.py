from lattice.counts import count_series, geometric_grid, ideal_series
from lattice.exceptions import DomainError
from lattice.fields import make_field
from lattice.table_cache import get_tables

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "V_m^s(x), its main term and error on a geometric grid, as CSV x,V,main,E."
    name = "count"

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=["visible", "sprime", "ideals"])
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument("-m", type=int, default=1)
        parser.add_argument("-s", type=int, default=1)
        parser.add_argument("--xmin", type=float, required=True)
        parser.add_argument("--xmax", type=float, required=True)
        parser.add_argument("--ratio", type=float, default=None)
        parser.add_argument("--limit", type=int, default=None, help="sieve size (default: xmax)")
        self.add_output_arguments(parser, workers=True)

    def perform(self, config, **options):
        kind = options["kind"]
        if kind == "visible" and config.s != 1:
            raise DomainError("count visible takes s = 1; use count sprime")
        field = make_field(config.d)
        xs = geometric_grid(config.x_min, config.x_max, config.grid_ratio)
        tables = get_tables(field, config.table_limit, workers=config.workers)
        if kind == "ideals":
            series = ideal_series(field, xs, tables=tables)
        else:
            series = count_series(field, config.m, config.s, xs, workers=config.workers,
                                  tables=tables)
        self.emit_csv(config, ("x", "V", "main", "E"), series.rows())
