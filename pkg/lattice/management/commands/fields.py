from lattice.exceptions import UnsupportedFieldError
from lattice.fields import class_number_formula_c, make_field, residue_c
from lattice.zeta import zeta_K_at

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "Field invariants, residue constant c, zeta_K(2) and zeta_K(3)."
    name = "fields"

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["info"])
        parser.add_argument("--d", type=int, required=True, help="squarefree d (0 for Q)")
        parser.add_argument("--tol", type=float, default=None,
                            help="tolerance for c and zeta_K (default: VLP_CONSTANT_TOL)")
        self.add_output_arguments(parser)

    def perform(self, config, **options):
        field = make_field(config.d)
        doc = field.as_dict()
        if config.tol is not None:
            doc["residue_c"] = residue_c(field, config.tol)
        doc["zeta_K_2"] = zeta_K_at(field, 2, config.tol).value
        doc["zeta_K_3"] = zeta_K_at(field, 3, config.tol).value
        try:
            doc["class_number_formula_c"] = class_number_formula_c(field)
        except UnsupportedFieldError:
            pass
        self.emit_json(config, doc)
