from lattice.analysis import fit_exponent, read_series_csv

from ._common import LatticeCommand


class Command(LatticeCommand):
    help = "Least-squares slope of log|v| against log x from a CSV file."
    name = "fit"

    def add_arguments(self, parser):
        parser.add_argument("--in", dest="infile", required=True)
        parser.add_argument("--xcol", default="x")
        parser.add_argument("--vcol", default="E")
        self.add_output_arguments(parser)

    def perform(self, config, **options):
        series = read_series_csv(options["infile"], options["xcol"], options["vcol"])
        self.emit_json(config, fit_exponent(series).as_dict())
