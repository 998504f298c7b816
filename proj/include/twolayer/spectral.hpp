#ifndef TWOLAYER_SPECTRAL_HPP
#define TWOLAYER_SPECTRAL_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace twolayer {

using Index = Eigen::Index;

// Uniform periodic grid, 1D or 2D. Node (ix, iy) lives at linear index iy*nx + ix.
template <typename Scalar>
class BasicGrid {
public:
    BasicGrid(Index n, Scalar length) : dim_(1), n_{n, 1}, length_{length, Scalar(1)} { validate(); }
    BasicGrid(Index nx, Index ny, Scalar lx, Scalar ly) : dim_(2), n_{nx, ny}, length_{lx, ly} { validate(); }

    int dim() const { return dim_; }
    Index n(int axis = 0) const { return n_[axis]; }
    Scalar length(int axis = 0) const { return length_[axis]; }
    Index size() const { return n_[0] * n_[1]; }
    Scalar spacing(int axis = 0) const { return length_[axis] / Scalar(n_[axis]); }
    Scalar cell_volume() const { return dim_ == 1 ? spacing(0) : spacing(0) * spacing(1); }
    Scalar coordinate(int axis, Index i) const { return spacing(axis) * Scalar(i); }

    // Half spectrum along x (real transform), full spectrum along y.
    Index spectral_nx() const { return n_[0] / 2 + 1; }
    Index spectral_size() const { return spectral_nx() * n_[1]; }

    Index mode(int axis, Index j) const {
        if (axis == 0) return j;
        return j <= n_[1] / 2 ? j : j - n_[1];
    }
    Scalar wavenumber(int axis, Index j) const {
        return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(mode(axis, j)) / length_[axis];
    }
    // Odd-order derivatives drop the Nyquist mode so that real fields stay real.
    Scalar odd_wavenumber(int axis, Index j) const {
        Index m = mode(axis, j);
        if (n_[axis] > 1 && (m == n_[axis] / 2 || m == -n_[axis] / 2)) return Scalar(0);
        return wavenumber(axis, j);
    }
    // Largest retained |mode| under the 2/3 rule.
    Index cutoff(int axis) const { return n_[axis] / 3; }

    friend bool operator==(const BasicGrid&, const BasicGrid&) = default;

private:
    void validate() const {
        for (int a = 0; a < dim_; ++a) {
            Index n = n_[a];
            if (n < 8 || (n & (n - 1)) != 0)
                throw std::invalid_argument("grid: points per axis must be a power of two >= 8, got " + std::to_string(n));
            if (!(length_[a] > Scalar(0)) || !std::isfinite(double(length_[a])))
                throw std::invalid_argument("grid: domain length must be positive and finite");
        }
    }

    int dim_;
    std::array<Index, 2> n_;
    std::array<Scalar, 2> length_;
};

template <typename Scalar>
class BasicField {
public:
    using Grid = BasicGrid<Scalar>;
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    explicit BasicField(const Grid& grid) : grid_(grid), values_(Array::Zero(grid.size())) {}
    BasicField(const Grid& grid, Array values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("field: sample count does not match grid");
    }

    static BasicField constant(const Grid& grid, Scalar c) { return BasicField(grid, Array::Constant(grid.size(), c)); }

    // fn(x) on 1D grids, fn(x, y) on 2D grids.
    template <typename Fn>
    static BasicField sample(const Grid& grid, Fn&& fn) {
        BasicField f(grid);
        for (Index iy = 0; iy < grid.n(1); ++iy)
            for (Index ix = 0; ix < grid.n(0); ++ix) {
                Scalar x = grid.coordinate(0, ix);
                if constexpr (std::is_invocable_v<Fn, Scalar>)
                    f.values_[iy * grid.n(0) + ix] = fn(x);
                else
                    f.values_[iy * grid.n(0) + ix] = fn(x, grid.coordinate(1, iy));
            }
        return f;
    }

    const Grid& grid() const { return grid_; }
    const Array& values() const { return values_; }
    Array& values() { return values_; }
    Index size() const { return values_.size(); }
    Scalar operator[](Index i) const { return values_[i]; }
    Scalar& operator[](Index i) { return values_[i]; }

    Scalar mean() const { return values_.mean(); }
    Scalar min() const { return values_.minCoeff(); }
    Scalar max() const { return values_.maxCoeff(); }
    Scalar max_abs() const { return values_.abs().maxCoeff(); }
    Index argmin() const {
        Index i;
        values_.minCoeff(&i);
        return i;
    }
    bool all_finite() const { return values_.allFinite(); }

    BasicField& operator+=(const BasicField& o) { check(o); values_ += o.values_; return *this; }
    BasicField& operator-=(const BasicField& o) { check(o); values_ -= o.values_; return *this; }
    BasicField& operator*=(const BasicField& o) { check(o); values_ *= o.values_; return *this; }
    BasicField& operator/=(const BasicField& o) { check(o); values_ /= o.values_; return *this; }
    BasicField& operator+=(Scalar c) { values_ += c; return *this; }
    BasicField& operator-=(Scalar c) { values_ -= c; return *this; }
    BasicField& operator*=(Scalar c) { values_ *= c; return *this; }
    BasicField& operator/=(Scalar c) { values_ /= c; return *this; }
    BasicField operator-() const { return BasicField(grid_, -values_); }

private:
    void check(const BasicField& o) const {
        if (!(o.grid_ == grid_)) throw std::invalid_argument("field: grid mismatch");
    }

    Grid grid_;
    Array values_;
};

template <typename S> BasicField<S> operator+(BasicField<S> a, const BasicField<S>& b) { return a += b; }
template <typename S> BasicField<S> operator-(BasicField<S> a, const BasicField<S>& b) { return a -= b; }
template <typename S> BasicField<S> operator*(BasicField<S> a, const BasicField<S>& b) { return a *= b; }
template <typename S> BasicField<S> operator/(BasicField<S> a, const BasicField<S>& b) { return a /= b; }
template <typename S> BasicField<S> operator+(BasicField<S> a, std::type_identity_t<S> c) { return a += c; }
template <typename S> BasicField<S> operator+(std::type_identity_t<S> c, BasicField<S> a) { return a += c; }
template <typename S> BasicField<S> operator-(BasicField<S> a, std::type_identity_t<S> c) { return a -= c; }
template <typename S> BasicField<S> operator-(std::type_identity_t<S> c, const BasicField<S>& a) { return (-a) += c; }
template <typename S> BasicField<S> operator*(BasicField<S> a, std::type_identity_t<S> c) { return a *= c; }
template <typename S> BasicField<S> operator*(std::type_identity_t<S> c, BasicField<S> a) { return a *= c; }
template <typename S> BasicField<S> operator/(BasicField<S> a, std::type_identity_t<S> c) { return a /= c; }
template <typename S> BasicField<S> operator/(std::type_identity_t<S> c, const BasicField<S>& a) {
    return BasicField<S>(a.grid(), c / a.values());
}

template <typename S, typename Fn>
BasicField<S> map(const BasicField<S>& f, Fn&& fn) {
    return BasicField<S>(f.grid(), f.values().unaryExpr(std::forward<Fn>(fn)).eval());
}
template <typename S> BasicField<S> square(const BasicField<S>& f) { return BasicField<S>(f.grid(), f.values().square()); }
template <typename S> BasicField<S> cube(const BasicField<S>& f) { return BasicField<S>(f.grid(), f.values().cube()); }

// d-component (or, for scalar states, zero-component) vector field.
template <typename Scalar>
class BasicVecField {
public:
    using Field = BasicField<Scalar>;
    using Grid = BasicGrid<Scalar>;

    BasicVecField() = default;
    BasicVecField(const Grid& grid, int ncomp) : comps_(ncomp, Field(grid)) {}
    explicit BasicVecField(const Grid& grid) : BasicVecField(grid, grid.dim()) {}
    explicit BasicVecField(std::vector<Field> comps) : comps_(std::move(comps)) {
        for (const auto& c : comps_)
            if (!(c.grid() == comps_.front().grid())) throw std::invalid_argument("vector field: component grids differ");
    }

    int size() const { return int(comps_.size()); }
    const Grid& grid() const { return comps_.at(0).grid(); }
    Field& operator[](int i) { return comps_[i]; }
    const Field& operator[](int i) const { return comps_[i]; }

    bool all_finite() const {
        for (const auto& c : comps_)
            if (!c.all_finite()) return false;
        return true;
    }

    BasicVecField& operator+=(const BasicVecField& o) { check(o); for (int i = 0; i < size(); ++i) comps_[i] += o.comps_[i]; return *this; }
    BasicVecField& operator-=(const BasicVecField& o) { check(o); for (int i = 0; i < size(); ++i) comps_[i] -= o.comps_[i]; return *this; }
    BasicVecField& operator*=(Scalar c) { for (auto& f : comps_) f *= c; return *this; }
    BasicVecField& operator*=(const Field& w) { for (auto& f : comps_) f *= w; return *this; }
    BasicVecField& operator/=(const Field& w) { for (auto& f : comps_) f /= w; return *this; }
    BasicVecField operator-() const { BasicVecField r(*this); r *= Scalar(-1); return r; }

private:
    void check(const BasicVecField& o) const {
        if (o.size() != size()) throw std::invalid_argument("vector field: component count mismatch");
    }
    std::vector<Field> comps_;
};

template <typename S> BasicVecField<S> operator+(BasicVecField<S> a, const BasicVecField<S>& b) { return a += b; }
template <typename S> BasicVecField<S> operator-(BasicVecField<S> a, const BasicVecField<S>& b) { return a -= b; }
template <typename S> BasicVecField<S> operator*(BasicVecField<S> a, std::type_identity_t<S> c) { return a *= c; }
template <typename S> BasicVecField<S> operator*(std::type_identity_t<S> c, BasicVecField<S> a) { return a *= c; }
template <typename S> BasicVecField<S> operator*(const BasicField<S>& w, BasicVecField<S> a) { return a *= w; }
template <typename S> BasicVecField<S> operator*(BasicVecField<S> a, const BasicField<S>& w) { return a *= w; }
template <typename S> BasicVecField<S> operator/(BasicVecField<S> a, const BasicField<S>& w) { return a /= w; }

template <typename S>
BasicField<S> dot(const BasicVecField<S>& a, const BasicVecField<S>& b) {
    BasicField<S> r(a.grid());
    for (int i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

// Discrete L2 inner product and norm (quadrature weight = cell volume).
template <typename S>
S inner(const BasicField<S>& a, const BasicField<S>& b) {
    return a.grid().cell_volume() * (a.values() * b.values()).sum();
}
template <typename S>
S inner(const BasicVecField<S>& a, const BasicVecField<S>& b) {
    S r = 0;
    for (int i = 0; i < a.size(); ++i) r += inner(a[i], b[i]);
    return r;
}
template <typename S> S l2_norm(const BasicField<S>& f) { return std::sqrt(inner(f, f)); }
template <typename S> S l2_norm(const BasicVecField<S>& v) { return std::sqrt(inner(v, v)); }

template <typename Scalar>
class BasicSpectrum {
public:
    using Complex = std::complex<Scalar>;
    using Array = Eigen::Array<Complex, Eigen::Dynamic, 1>;
    using Grid = BasicGrid<Scalar>;

    explicit BasicSpectrum(const Grid& grid) : grid_(grid), coeffs_(Array::Zero(grid.spectral_size())) {}

    const Grid& grid() const { return grid_; }
    Array& coeffs() { return coeffs_; }
    const Array& coeffs() const { return coeffs_; }
    Complex& operator()(Index ix, Index iy) { return coeffs_[iy * grid_.spectral_nx() + ix]; }
    Complex operator()(Index ix, Index iy) const { return coeffs_[iy * grid_.spectral_nx() + ix]; }

    // fn(kx_index, ky_index) -> multiplier applied in place.
    template <typename Fn>
    BasicSpectrum& scale(Fn&& fn) {
        const Index nxh = grid_.spectral_nx();
        for (Index iy = 0; iy < grid_.n(1); ++iy)
            for (Index ix = 0; ix < nxh; ++ix) coeffs_[iy * nxh + ix] *= fn(ix, iy);
        return *this;
    }

private:
    Grid grid_;
    Array coeffs_;
};

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
    thread_local Eigen::FFT<Scalar> engine = [] {
        Eigen::FFT<Scalar> e;
        e.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
        return e;
    }();
    return engine;
}

}  // namespace detail

template <typename S>
BasicSpectrum<S> forward(const BasicField<S>& f) {
    using Complex = std::complex<S>;
    const auto& g = f.grid();
    BasicSpectrum<S> out(g);
    auto& fft = detail::fft_engine<S>();
    const Index nx = g.n(0), ny = g.n(1), nxh = g.spectral_nx();
    const S* src = f.values().data();
    Complex* dst = out.coeffs().data();
    for (Index iy = 0; iy < ny; ++iy) fft.fwd(dst + iy * nxh, src + iy * nx, int(nx));
    if (ny > 1) {
        std::vector<Complex> col(ny), tmp(ny);
        for (Index ix = 0; ix < nxh; ++ix) {
            for (Index iy = 0; iy < ny; ++iy) col[iy] = dst[iy * nxh + ix];
            fft.fwd(tmp.data(), col.data(), int(ny));
            for (Index iy = 0; iy < ny; ++iy) dst[iy * nxh + ix] = tmp[iy];
        }
    }
    return out;
}

template <typename S>
BasicField<S> inverse(BasicSpectrum<S> spec) {
    using Complex = std::complex<S>;
    const auto& g = spec.grid();
    BasicField<S> out(g);
    auto& fft = detail::fft_engine<S>();
    const Index nx = g.n(0), ny = g.n(1), nxh = g.spectral_nx();
    Complex* src = spec.coeffs().data();
    if (ny > 1) {
        std::vector<Complex> col(ny), tmp(ny);
        for (Index ix = 0; ix < nxh; ++ix) {
            for (Index iy = 0; iy < ny; ++iy) col[iy] = src[iy * nxh + ix];
            fft.inv(tmp.data(), col.data(), int(ny));
            for (Index iy = 0; iy < ny; ++iy) src[iy * nxh + ix] = tmp[iy];
        }
    }
    S* dst = out.values().data();
    for (Index iy = 0; iy < ny; ++iy) fft.inv(dst + iy * nx, src + iy * nxh, int(nx));
    return out;
}

// Applies the Fourier multiplier symbol(ix, iy) to f.
template <typename S, typename Fn>
BasicField<S> fourier_multiplier(const BasicField<S>& f, Fn&& symbol) {
    auto spec = forward(f);
    spec.scale(std::forward<Fn>(symbol));
    return inverse(std::move(spec));
}

namespace detail {

template <typename S>
std::complex<S> derivative_symbol(const BasicGrid<S>& g, int axis, int order, Index ix, Index iy) {
    Index j = axis == 0 ? ix : iy;
    S k = g.wavenumber(axis, j);
    S kt = g.odd_wavenumber(axis, j);
    switch (order) {
        case 1: return {S(0), kt};
        case 2: return {-k * k, S(0)};
        case 3: return {S(0), -kt * k * k};
        default: throw std::invalid_argument("deriv: order must be 1, 2 or 3");
    }
}

}  // namespace detail

template <typename S>
BasicField<S> deriv(const BasicField<S>& f, int axis, int order = 1) {
    const auto& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("deriv: axis out of range");
    if (order < 1 || order > 3) throw std::invalid_argument("deriv: order must be 1, 2 or 3");
    return fourier_multiplier(f, [&](Index ix, Index iy) { return detail::derivative_symbol(g, axis, order, ix, iy); });
}

template <typename S>
BasicVecField<S> gradient(const BasicField<S>& f) {
    const auto& g = f.grid();
    auto spec = forward(f);
    std::vector<BasicField<S>> comps;
    for (int a = 0; a < g.dim(); ++a) {
        auto s = spec;
        s.scale([&](Index ix, Index iy) { return detail::derivative_symbol(g, a, 1, ix, iy); });
        comps.push_back(inverse(std::move(s)));
    }
    return BasicVecField<S>(std::move(comps));
}

template <typename S>
BasicField<S> divergence(const BasicVecField<S>& v) {
    const auto& g = v.grid();
    BasicSpectrum<S> acc(g);
    for (int a = 0; a < v.size(); ++a) {
        auto s = forward(v[a]);
        s.scale([&](Index ix, Index iy) { return detail::derivative_symbol(g, a, 1, ix, iy); });
        acc.coeffs() += s.coeffs();
    }
    return inverse(std::move(acc));
}

template <typename S>
BasicField<S> laplacian(const BasicField<S>& f) {
    const auto& g = f.grid();
    return fourier_multiplier(f, [&](Index ix, Index iy) {
        S kx = g.wavenumber(0, ix), ky = g.wavenumber(1, iy);
        return std::complex<S>(-(kx * kx + ky * ky), S(0));
    });
}

// |Λ^s f|_{L2} with Λ = (1 - Δ)^{1/2}.
template <typename S>
S sobolev_norm(const BasicField<S>& f, S s) {
    if (s < S(0)) throw std::invalid_argument("sobolev_norm: index must be >= 0");
    if (s == S(0)) return l2_norm(f);
    const auto& g = f.grid();
    auto spec = forward(f);
    const Index nx = g.n(0), nxh = g.spectral_nx();
    S sum = 0;
    for (Index iy = 0; iy < g.n(1); ++iy)
        for (Index ix = 0; ix < nxh; ++ix) {
            S kx = g.wavenumber(0, ix), ky = g.wavenumber(1, iy);
            S weight = (ix == 0 || ix == nx / 2) ? S(1) : S(2);
            sum += weight * std::pow(S(1) + kx * kx + ky * ky, s) * std::norm(spec(ix, iy));
        }
    S n_total = S(g.size());
    return std::sqrt(g.cell_volume() * sum / n_total);
}

template <typename S>
S sobolev_norm(const BasicVecField<S>& v, S s) {
    S sum = 0;
    for (int i = 0; i < v.size(); ++i) {
        S c = sobolev_norm(v[i], s);
        sum += c * c;
    }
    return std::sqrt(sum);
}

// Projection onto gradient fields, symbol k kᵀ/|k|² built from the odd-derivative
// wavenumbers so that div(ΠW) = div W holds exactly on the grid.
template <typename S>
BasicVecField<S> project_gradient(const BasicVecField<S>& w) {
    const auto& g = w.grid();
    if (g.dim() == 1) return w;
    if (w.size() != 2) throw std::invalid_argument("project_gradient: expected 2 components on a 2D grid");
    auto sx = forward(w[0]);
    auto sy = forward(w[1]);
    const Index nxh = g.spectral_nx();
    for (Index iy = 0; iy < g.n(1); ++iy)
        for (Index ix = 0; ix < nxh; ++ix) {
            S kx = g.odd_wavenumber(0, ix), ky = g.odd_wavenumber(1, iy);
            S k2 = kx * kx + ky * ky;
            if (k2 == S(0)) continue;
            auto proj = (kx * sx(ix, iy) + ky * sy(ix, iy)) / k2;
            sx(ix, iy) = kx * proj;
            sy(ix, iy) = ky * proj;
        }
    return BasicVecField<S>({inverse(std::move(sx)), inverse(std::move(sy))});
}

// (1 - aΔ)^{-1} f.
template <typename S>
BasicField<S> helmholtz_inverse(S a, const BasicField<S>& f) {
    if (a < S(0)) throw std::invalid_argument("helmholtz_inverse: coefficient must be >= 0");
    if (a == S(0)) return f;
    const auto& g = f.grid();
    return fourier_multiplier(f, [&](Index ix, Index iy) {
        S kx = g.wavenumber(0, ix), ky = g.wavenumber(1, iy);
        return std::complex<S>(S(1) / (S(1) + a * (kx * kx + ky * ky)), S(0));
    });
}

template <typename S>
BasicVecField<S> helmholtz_inverse(S a, BasicVecField<S> v) {
    for (int i = 0; i < v.size(); ++i) v[i] = helmholtz_inverse(a, v[i]);
    return v;
}

// 2/3-rule truncation.
template <typename S>
BasicField<S> dealias(const BasicField<S>& f) {
    const auto& g = f.grid();
    return fourier_multiplier(f, [&](Index ix, Index iy) {
        bool keep = std::abs(g.mode(0, ix)) <= g.cutoff(0) && (g.dim() == 1 || std::abs(g.mode(1, iy)) <= g.cutoff(1));
        return keep ? S(1) : S(0);
    });
}

template <typename S>
BasicVecField<S> dealias(BasicVecField<S> v) {
    for (int i = 0; i < v.size(); ++i) v[i] = dealias(v[i]);
    return v;
}

// Periodic translation f(x - shift) along x, exact phase multiplication.
template <typename S>
BasicField<S> translate(const BasicField<S>& f, S shift) {
    const auto& g = f.grid();
    return fourier_multiplier(f, [&](Index ix, Index) {
        S k = g.odd_wavenumber(0, ix);
        return std::polar(S(1), -k * shift);
    });
}

using Grid = BasicGrid<double>;
using Field = BasicField<double>;
using VecField = BasicVecField<double>;
using Spectrum = BasicSpectrum<double>;

}  // namespace twolayer

#endif
