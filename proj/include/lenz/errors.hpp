#pragma once

#include <stdexcept>
#include <string>

namespace lenz {

/// Arguments outside a routine's documented domain (bad dimension, too few
/// points, malformed ranges, NaN coordinates, ...).
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Input that is syntactically fine but geometrically unusable
/// (coincident seed points, rank-deficient sample, ...).
class DegenerateInput : public std::runtime_error {
public:
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical construction step failed (no sign-change bracket, a
/// posteriori validation of a generated configuration failed, ...).
class ConstructionFailed : public std::runtime_error {
public:
    explicit ConstructionFailed(const std::string& what) : std::runtime_error(what) {}
};

/// The requested object provably does not exist for these parameters
/// (as opposed to "we failed to build it").
class Unachievable : public std::runtime_error {
public:
    explicit Unachievable(const std::string& what) : std::runtime_error(what) {}
};

/// A guard against combinatorial blow-up tripped before the search ran.
class ResourceLimit : public std::runtime_error {
public:
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lenz
