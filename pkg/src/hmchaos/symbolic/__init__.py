from .words import WordSystem, as_word, block_count, build_word, default_words, u_slice, word_text

_EXAMPLE4 = ("HFamilyPoint", "e_family", "example4_system", "frequency_table", "h_family_point",
             "in_subshift", "symbolic_phi", "u_visit_frequency", "verify_example4")


def __getattr__(name):
    # example4 depends on metric_core, which itself reads words lazily
    if name in _EXAMPLE4:
        from . import example4

        return getattr(example4, name)
    raise AttributeError(name)
