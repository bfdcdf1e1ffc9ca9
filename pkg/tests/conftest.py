import os

import hypothesis
import numpy as np

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=50, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))
