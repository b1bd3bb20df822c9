#include <iostream>
#include <string>
#include <vector>

#include "romanov/harness.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return romanov::run_command(args, std::cout, std::cerr);
}
