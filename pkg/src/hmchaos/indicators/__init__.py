from .crosscheck import later_hit, mixing_implies_kato, power_agreement
from .probes import (
    Orbits, accessibility_probe, admissible_range, check_admissible, dyadic_opens,
    kato_report, li_yorke_scan, mixing_probe, sensitivity_probe, snw_frequency,
    transitivity_probe, visit_frequencies, weak_mixing_probe,
)
from .profile import (
    DistributionalProfile, TimeSequence, default_window, distributional_profile,
    distributional_profile_seq, gaps_along, profile_from_gaps,
)
from .report import CAVEAT, KINDS, ChaosReport
from .synthesis import DCFamily, sequence_gaps, synthesize_dc_pair, verify_dc_seq
