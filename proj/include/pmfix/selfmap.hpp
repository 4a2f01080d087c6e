#pragma once

#include <functional>
#include <memory>
#include <string>

#include "pmfix/errors.hpp"
#include "pmfix/point.hpp"

namespace pmfix {

/// A total self-map on a space's domain. Pure; repeated application is exact
/// (no smoothing or damping between iterates).
class SelfMap {
public:
    using Fn = std::function<Point(Point)>;
    using DomainFn = std::function<bool(Point)>;

    SelfMap(std::string name, Fn f, DomainFn domain = nullptr)
        : impl_(std::make_shared<Impl>(Impl{std::move(name), std::move(f), std::move(domain)})) {}

    Point apply(Point x) const {
        if (!in_domain(x)) throw DomainError("point outside the domain of map " + impl_->name);
        const Point y = impl_->f(x);
        if (!finite_point(y)) throw DomainError("map " + impl_->name + " produced a non-finite value");
        return y;
    }

    Point operator()(Point x) const { return apply(x); }

    bool in_domain(Point x) const {
        return finite_point(x) && (!impl_->domain || impl_->domain(x));
    }

    /// T^k as a single map (k >= 1); used for iterated-map experiments.
    SelfMap power(int k) const {
        if (k < 1) throw Error("map power must be at least 1");
        if (k == 1) return *this;
        SelfMap base = *this;
        auto fn = [base, k](Point x) {
            Point v = x;
            for (int i = 0; i < k; ++i) v = base.apply(v);
            return v;
        };
        return SelfMap(impl_->name + "^" + std::to_string(k), std::move(fn), impl_->domain);
    }

    const std::string& name() const { return impl_->name; }

private:
    struct Impl {
        std::string name;
        Fn f;
        DomainFn domain;
    };
    std::shared_ptr<const Impl> impl_;
};

}  // namespace pmfix
