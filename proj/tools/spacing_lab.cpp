#include "spacing/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    const auto parsed = spacing::parse_args(argc, argv, std::cout, std::cerr);
    if (parsed.done) return parsed.exit_code;
    return spacing::run(parsed.config, std::cout, std::cerr);
}
