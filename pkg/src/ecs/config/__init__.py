"""ecs-sim configuration package."""
