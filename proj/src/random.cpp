#include "modgeo/random.hpp"

namespace modgeo {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CMatrix random_gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return g;
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
    CMatrix g = random_gaussian(n, rng);
    CMatrix h = 0.5 * (g + g.adjoint());
    double top = herm_eig(h).values.cwiseAbs().maxCoeff();
    if (top > 0.0) h /= top;
    return h;
}

DensityMatrix random_density(int n, std::mt19937_64& rng) {
    constexpr double eps = 1e-3;
    CMatrix g = random_gaussian(n, rng);
    CMatrix w = g * g.adjoint();
    CMatrix rho = w / w.trace().real();
    rho = (rho + (eps / n) * CMatrix::Identity(n, n)) / (1.0 + eps);
    return DensityMatrix(rho);
}

CMatrix random_positive(int n, std::mt19937_64& rng) {
    DensityMatrix base = random_density(n, rng);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    return std::exp(uniform(rng)) * base.matrix();
}

}  // namespace modgeo
