"""Write the bundled stick diagrams to data/ as JSON."""

from pathlib import Path

from orikami import io
from orikami.fixtures import STICK_FIXTURES

OUT = Path(__file__).resolve().parent.parent / "data"

if __name__ == "__main__":
    for name, make in STICK_FIXTURES.items():
        path = io.write_json(OUT / f"{name}.json", make().to_dict())
        print(path)
