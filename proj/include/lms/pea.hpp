#pragma once

// Pseudo-Euclidean linear algebra on E^m_s. Timelike coordinates occupy the
// first s slots: <u,v> = -sum_{i<s} u_i v_i + sum_{j>=s} u_j v_j.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lms {

inline constexpr double kDefaultCausalTol = 1e-9;

class Signature {
public:
    Signature(int dim, int index) : dim_(dim), index_(index) {
        if (dim <= 0 || index < 0 || index > dim) {
            throw InvalidInput("invalid signature E^" + std::to_string(dim) + "_" +
                               std::to_string(index));
        }
    }

    int dim() const noexcept { return dim_; }
    int index() const noexcept { return index_; }

    friend bool operator==(const Signature&, const Signature&) = default;

    std::string to_string() const {
        return "E^" + std::to_string(dim_) + "_" + std::to_string(index_);
    }

private:
    int dim_;
    int index_;
};

inline std::ostream& operator<<(std::ostream& os, const Signature& s) {
    return os << s.to_string();
}

inline void require_same(const Signature& a, const Signature& b, const char* where) {
    if (a != b) {
        throw InvalidInput(std::string(where) + ": signature mismatch " + a.to_string() +
                           " vs " + b.to_string());
    }
}

/// Coordinate vector in E^m_s. Arithmetic requires matching signatures.
class PseudoVector {
public:
    explicit PseudoVector(Signature sig) : sig_(sig), c_(static_cast<std::size_t>(sig.dim()), 0.0) {}

    PseudoVector(Signature sig, std::vector<double> components)
        : sig_(sig), c_(std::move(components)) {
        if (c_.size() != static_cast<std::size_t>(sig_.dim())) {
            throw InvalidInput("PseudoVector: " + std::to_string(c_.size()) +
                               " components for " + sig_.to_string());
        }
    }

    PseudoVector(Signature sig, std::initializer_list<double> components)
        : PseudoVector(sig, std::vector<double>(components)) {}

    const Signature& signature() const noexcept { return sig_; }
    std::size_t size() const noexcept { return c_.size(); }
    std::span<const double> components() const noexcept { return c_; }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }

    double max_norm() const noexcept {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    PseudoVector& operator+=(const PseudoVector& o) {
        require_same(sig_, o.sig_, "operator+=");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    PseudoVector& operator-=(const PseudoVector& o) {
        require_same(sig_, o.sig_, "operator-=");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    PseudoVector& operator*=(double s) noexcept {
        for (double& v : c_) v *= s;
        return *this;
    }
    PseudoVector& operator/=(double s) noexcept {
        for (double& v : c_) v /= s;
        return *this;
    }

    friend PseudoVector operator+(PseudoVector a, const PseudoVector& b) { return a += b; }
    friend PseudoVector operator-(PseudoVector a, const PseudoVector& b) { return a -= b; }
    friend PseudoVector operator*(PseudoVector a, double s) { return a *= s; }
    friend PseudoVector operator*(double s, PseudoVector a) { return a *= s; }
    friend PseudoVector operator/(PseudoVector a, double s) { return a /= s; }
    friend PseudoVector operator-(PseudoVector a) { return a *= -1.0; }

    friend bool operator==(const PseudoVector&, const PseudoVector&) = default;

private:
    Signature sig_;
    std::vector<double> c_;
};

inline std::ostream& operator<<(std::ostream& os, const PseudoVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os << ')';
}

inline double inner(const PseudoVector& u, const PseudoVector& v) {
    require_same(u.signature(), v.signature(), "inner");
    const auto s = static_cast<std::size_t>(u.signature().index());
    double neg = 0.0;
    double pos = 0.0;
    for (std::size_t i = 0; i < s; ++i) neg += u[i] * v[i];
    for (std::size_t j = s; j < u.size(); ++j) pos += u[j] * v[j];
    return pos - neg;
}

enum class CausalCharacter { Spacelike, Timelike, Lightlike, Zero };

inline const char* to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "spacelike";
        case CausalCharacter::Timelike: return "timelike";
        case CausalCharacter::Lightlike: return "lightlike";
        case CausalCharacter::Zero: return "zero";
    }
    return "?";
}

inline CausalCharacter causal_character(const PseudoVector& v, double tol = kDefaultCausalTol) {
    if (tol < 0.0) throw InvalidInput("causal_character: negative tolerance");
    const double q = inner(v, v);
    if (q > tol) return CausalCharacter::Spacelike;
    if (q < -tol) return CausalCharacter::Timelike;
    return v.max_norm() > tol ? CausalCharacter::Lightlike : CausalCharacter::Zero;
}

enum class AmbientKind { Flat, Sphere, Hyperbolic };

inline const char* to_string(AmbientKind k) {
    switch (k) {
        case AmbientKind::Flat: return "flat";
        case AmbientKind::Sphere: return "sphere";
        case AmbientKind::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

/// The space form a surface lives in. Sphere S^k_s(1) sits in E^{k+1}_s,
/// Hyperbolic H^k_s(-1) in E^{k+1}_{s+1}.
class Ambient {
public:
    static Ambient flat(Signature sig) { return {AmbientKind::Flat, sig, 0.0, sig}; }

    static Ambient sphere(Signature surface) {
        return {AmbientKind::Sphere, surface, 1.0, Signature(surface.dim() + 1, surface.index())};
    }

    static Ambient hyperbolic(Signature surface) {
        return {AmbientKind::Hyperbolic, surface, -1.0,
                Signature(surface.dim() + 1, surface.index() + 1)};
    }

    /// Ambient whose quadric lives in the given flat embedding space.
    static Ambient from_embedding(AmbientKind kind, Signature embedding) {
        switch (kind) {
            case AmbientKind::Flat: return flat(embedding);
            case AmbientKind::Sphere:
                if (embedding.dim() < 2) break;
                return sphere(Signature(embedding.dim() - 1, embedding.index()));
            case AmbientKind::Hyperbolic:
                if (embedding.dim() < 2 || embedding.index() < 1) break;
                return hyperbolic(Signature(embedding.dim() - 1, embedding.index() - 1));
        }
        throw InvalidInput("no " + std::string(lms::to_string(kind)) + " ambient embeds in " +
                           embedding.to_string());
    }

    AmbientKind kind() const noexcept { return kind_; }
    const Signature& surface_signature() const noexcept { return surface_; }
    const Signature& embedding_signature() const noexcept { return embedding_; }
    double curvature() const noexcept { return c_; }

    std::string to_string() const {
        switch (kind_) {
            case AmbientKind::Flat: return surface_.to_string();
            case AmbientKind::Sphere:
                return "S^" + std::to_string(surface_.dim()) + "_" +
                       std::to_string(surface_.index()) + "(1)";
            case AmbientKind::Hyperbolic:
                return "H^" + std::to_string(surface_.dim()) + "_" +
                       std::to_string(surface_.index()) + "(-1)";
        }
        return "?";
    }

    friend bool operator==(const Ambient&, const Ambient&) = default;

private:
    Ambient(AmbientKind k, Signature surface, double c, Signature embedding)
        : kind_(k), surface_(surface), embedding_(embedding), c_(c) {}

    AmbientKind kind_;
    Signature surface_;
    Signature embedding_;
    double c_;
};

/// <x,x> - 1/c; zero iff x lies on the unit quadric.
inline double quadric_residual(const PseudoVector& x, const Ambient& ambient) {
    if (ambient.kind() == AmbientKind::Flat) {
        throw InvalidInput("quadric_residual: flat ambient has no quadric");
    }
    require_same(x.signature(), ambient.embedding_signature(), "quadric_residual");
    return inner(x, x) - 1.0 / ambient.curvature();
}

inline double light_cone_residual(const PseudoVector& x) { return inner(x, x); }

}  // namespace lms
