#include "lqso/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    try {
        const auto cfg = lqso::cli::parse_config(std::vector<std::string>(argv + 1, argv + argc));
        return lqso::cli::execute(cfg, std::cerr);
    } catch (const lqso::cli::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
