import os
import sys
from pathlib import Path

import hypothesis

ROOT = Path(__file__).resolve().parent.parent
for path in (ROOT / "src", ROOT):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))

hypothesis.settings.register_profile("seeded", derandomize=True, deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", derandomize=True, deadline=None, max_examples=10)
hypothesis.settings.register_profile("thorough", derandomize=True, deadline=None, max_examples=1000)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "seeded"))
