from .hashing import HashFamily, key_bytes
from .counting import CountingSketch, new_sketch
from .sizing import guarantee_dimensions, peeling_threshold, threshold_width
from .guarantee import GuaranteeTrialResult, guarantee_trial
