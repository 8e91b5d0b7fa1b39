"""sketchquest: a quest-based drawing tutor service.

A learner states a goal in free text; the service turns it into an
ordered ladder of drawing tasks, watches the shared canvas, answers with
encouraging multi-dimensional feedback cards, hands out gem rewards on
task completion, and finally re-renders the finished drawing in a chosen
artistic style.
"""

__version__ = "0.1.0"
