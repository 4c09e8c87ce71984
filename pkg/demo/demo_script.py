import os
import traceback

from symflag import RunConfig, SymflagTool


def main():
    # Debugging
    debug_mode = False

    output_dir = os.path.join(os.path.dirname(__file__), 'output')
    os.makedirs(output_dir, exist_ok=True)

    # One configuration per command
    configs = [
        RunConfig("verify key-lemma", n=3, samples=20, seed=7),
        RunConfig("verify transversality", n=3, samples=20),
        RunConfig("verify inversion", n=3, theta=(1, 3), samples=10),
        RunConfig("verify property-i", n=3, theta=(1, 2), samples=20),
        RunConfig("verify rep", n=4, samples=5),
        RunConfig("witness sl2c", n=3, samples=5, dump_locus=os.path.join(output_dir, 'locus.csv')),
        RunConfig("witness su", n=4, samples=5, backend="exact"),
        RunConfig("check non-maximal", n=3, samples=10),
    ]

    for config in configs:
        try:
            print(f"Running {config.command} (n={config.n})...")
            tool = SymflagTool(config, verbose=True, debug=debug_mode)
            report = tool.run()
            print(f"Status: {'pass' if report.passed else 'fail'} in {report.wall_time:.3f}s")

            output_file = os.path.join(output_dir, config.check_name + '.json')
            tool.save_json(output_file)
            print(f"Report head: {tool.to_json()[0:100]}...")

        except Exception as e:
            print(f"An error occurred while running {config.command}: {e}")
            if debug_mode:
                traceback.print_exc()
            continue


if __name__ == '__main__':
    main()
