# keeps the tests directory importable (corpus.py helpers)
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"
