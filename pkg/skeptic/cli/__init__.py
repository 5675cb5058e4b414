from skeptic.cli.main import main
from skeptic.cli.structures import RunConfig

__all__ = ["main", "RunConfig"]
