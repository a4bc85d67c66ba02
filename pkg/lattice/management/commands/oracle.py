from lattice.counts import oracle_compare
from lattice.exceptions import OracleMismatch
from lattice.fields import make_field

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "Compare the Moebius-sum count with brute-force tuple enumeration."
    name = "oracle"

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument("-m", type=int, default=2)
        parser.add_argument("-s", type=int, default=1)
        parser.add_argument("--xmax", type=float, required=True)
        self.add_output_arguments(parser)

    def perform(self, config, **options):
        field = make_field(config.d)
        doc = oracle_compare(field, config.m, config.s, int(config.x_max))
        self.emit_json(config, doc)
        if not doc["equal"]:
            raise OracleMismatch(
                f"formula {doc['formula']} != brute force {doc['brute_force']}")
