import click

from .asymptotics import asymptotics_cli
from .kac import kac_cli
from .sampling import sample_cli
from .scaled import scaled_cli
from .thermo import phase_cli


@click.group()
def main() -> None:  # pragma: no cover
    pass


main.add_command(phase_cli)
main.add_command(sample_cli)
main.add_command(scaled_cli)
main.add_command(kac_cli)
main.add_command(asymptotics_cli)
