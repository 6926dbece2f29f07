from wellcs.cli import cli
from wellcs.core.config import settings


def main() -> None:
    """Console entry point."""
    cli(prog_name=settings.APP_NAME)


if __name__ == "__main__":
    main()
