// Prints uniform points on the sphere in R^m as CSV, drawn through the
// Dirichlet(1/2, ..., 1/2) route. Usage: demo_sphere_points [m] [count] [seed]

#include <cstdlib>
#include <iostream>

#include "ojl/ojl.hpp"

int main(int argc, char** argv) {
  const long m = argc > 1 ? std::atol(argv[1]) : 3;
  const long count = argc > 2 ? std::atol(argv[2]) : 1000;
  ojl::Rng rng(argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 0);
  if (m < 2 || count < 0) {
    std::cerr << "usage: demo_sphere_points [m >= 2] [count] [seed]\n";
    return 2;
  }
  ojl::RowMatrix points(count, m);
  for (long i = 0; i < count; ++i) points.row(i) = ojl::sample_sphere_dirichlet(rng, m).coords().transpose();
  ojl::write_csv(std::cout, points);
}
