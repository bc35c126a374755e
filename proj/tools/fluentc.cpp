#include "fluentc/cli.hpp"

#include <iostream>

int main( int argc, char** argv )
{
  return fluentc::run_cli( argc, argv, std::cout, std::cerr );
}
