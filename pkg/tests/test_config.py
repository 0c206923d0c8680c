# std
import unittest
from pathlib import Path

# project
from src.config import Config
from src.exceptions import ConfigError


class TestConfig(unittest.TestCase):
    def setUp(self) -> None:
        self.config_dir = Path(__file__).resolve().parents[1]

    def testBasic(self):
        with self.assertRaises(ValueError):
            _ = Config(self.config_dir / "wrong.yaml")

        config = Config(self.config_dir / "config-example.yaml")
        problem_config = config.get_problem_config()
        self.assertEqual(problem_config["group"], "so3")
        self.assertEqual(problem_config["manifold"], "sphere2")
        self.assertEqual(problem_config["targets"][0]["node"], 10)
        self.assertEqual(problem_config["targets"][-1]["point"], [0.0, -0.6, 0.8])

        optimizer_config = config.get_optimizer_config()
        self.assertEqual(optimizer_config["max_iters"], 3000)
        self.assertEqual(optimizer_config["homotopy_schedule"][-1], problem_config["sigma"])

        self.assertEqual(config.get_diagnostics_config()["node_jumps"]["enable"], True)
        self.assertEqual(config.get_log_level_config(), "INFO")
        self.assertIsNone(config.get_seed())
        self.assertIsNone(config.get_convergence_config())
        self.assertIs(config.get_config()["problem"], problem_config)

    def testMissingSections(self):
        config = Config.from_dict({"optimizer": {"max_iters": 10}})
        self.assertIsNone(config.get_outputs_config())
        self.assertEqual(config.get_log_level_config(), "INFO")
        with self.assertRaises(ConfigError):
            config.get_problem_config()

    def testUnknownTopLevelKey(self):
        with self.assertRaises(ConfigError):
            Config.from_dict({"problem": {}, "plots": {}})


if __name__ == "__main__":
    unittest.main()
