"""Zero forcing on claw-free cubic graphs."""
