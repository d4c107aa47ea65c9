#ifndef JUNTA_ORACLES_HPP
#define JUNTA_ORACLES_HPP

#include <utility>
#include <vector>

#include "junta/boolean.hpp"
#include "junta/pauli.hpp"

namespace junta {

enum class InstanceClass { Yes, No, Neither };

inline const char* to_string(InstanceClass c) {
    switch (c) {
        case InstanceClass::Yes: return "YES";
        case InstanceClass::No: return "NO";
        default: return "NEITHER";
    }
}

struct Certification {
    InstanceClass cls = InstanceClass::Neither;
    double distance = 0;
    Subset witness = 0;  // argmin subset of the exact distance
};

/// Brute-force classification of U against the promise: YES when the exact
/// distance to the nearest k-junta is at most eps1, NO when at least eps2.
inline Certification certify_instance_unitary(const Unitary& u, int k, double eps1,
                                              double eps2) {
    if (u.n() > 6 || k > 3)
        throw CapacityError("certify_instance_unitary: brute force limited to n <= 6, k <= 3");
    const JuntaDistance d = dist_to_k_junta(u, k);
    Certification c;
    c.distance = d.distance;
    c.witness = d.witness;
    c.cls = (d.distance <= eps1)   ? InstanceClass::Yes
            : (d.distance >= eps2) ? InstanceClass::No
                                   : InstanceClass::Neither;
    return c;
}

inline Certification certify_instance_boolean(const BooleanFunction& f, int k, double eps1,
                                              double eps2) {
    if (f.n() > 12)
        throw CapacityError("certify_instance_boolean: brute force limited to n <= 12");
    const BooleanJuntaDistance d = dist_to_k_junta_bool(f, k);
    Certification c;
    c.distance = d.distance;
    c.witness = d.witness;
    c.cls = (d.distance <= eps1)   ? InstanceClass::Yes
            : (d.distance >= eps2) ? InstanceClass::No
                                   : InstanceClass::Neither;
    return c;
}

struct InfluenceEntry {
    double influence = 0;
    double degree_k = 0;
};

/// (Inf_i, Inf_i^{<=k}) for every coordinate, from the exact spectrum.
inline std::vector<InfluenceEntry> exact_influence_profile(const Unitary& u, int k) {
    const PauliSpectrum spec = pauli_spectrum(u);
    std::vector<InfluenceEntry> out(static_cast<std::size_t>(u.n()));
    for (int i = 1; i <= u.n(); ++i)
        out[i - 1] = {influence_qubit(spec, i), degree_k_influence(spec, i, k)};
    return out;
}

inline std::vector<InfluenceEntry> exact_influence_profile(const BooleanFunction& f, int k) {
    const FourierSpectrum spec = fourier_transform(f);
    std::vector<InfluenceEntry> out(static_cast<std::size_t>(f.n()));
    for (int i = 1; i <= f.n(); ++i)
        out[i - 1] = {influence_var(spec, i), degree_k_influence(spec, i, k)};
    return out;
}

}  // namespace junta

#endif
