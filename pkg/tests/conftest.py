import hypothesis

# One deterministic profile for the whole suite: property failures must be
# reproducible run-to-run, and the acceptance timings must not drift with
# example generation.
hypothesis.settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    derandomize=True,
)
hypothesis.settings.load_profile("suite")
