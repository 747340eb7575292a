from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=100)
settings.load_profile("exact")
