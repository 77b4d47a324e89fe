#pragma once

#include <cstdint>
#include <string>

#include "jtugms/gaussian.hpp"
#include "jtugms/graph.hpp"

namespace jtugms {

enum class Family { Chain, Cycle, Hub, Neighborhood };

std::string to_string(Family f);
Family parse_family(const std::string& name);

/// Synthetic precision-matrix family. Vertices are 0-based; the "first p1"
/// vertices are 0..p1-1.
struct SyntheticSpec {
    Family family = Family::Chain;
    int p = 50;
    int p1 = 10;
    double rho1 = 0.15;   // weak value
    double rho2 = 0.245;  // strong value
    int d1 = 8;           // hub star size / neighborhood degree cap on 0..p1-1
    int d2 = 5;           // the same for p1..p-1
    std::uint64_t seed = 1;

    void validate() const;
};

/// Named presets: CH1, CH2, CY1, CY2, HB1, HB2, NB1, NB2.
SyntheticSpec preset(const std::string& name, int p, int p1, std::uint64_t seed);

struct SyntheticModel {
    GaussianModel model;
    Graph g_star;
    EdgeSet weak;
    int shrink_steps = 0;  // off-diagonal x0.95 rescalings applied for PD
};

/// Unit-diagonal precision matrix of the requested family. If the minimum
/// eigenvalue is <= 1e-3 the off-diagonal part is multiplied by 0.95 until
/// it is not. Throws std::domain_error for an invalid spec.
SyntheticModel generate(const SyntheticSpec& spec);

SyntheticModel gen_chain(const SyntheticSpec& spec);
SyntheticModel gen_cycle(const SyntheticSpec& spec);
SyntheticModel gen_hub(const SyntheticSpec& spec);
SyntheticModel gen_neighborhood(const SyntheticSpec& spec);

/// Family-specific PC depth and screening depth.
int family_kappa(Family f);
int family_screen_kappa(Family f);

}  // namespace jtugms
