#include "topophase/diracsim.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "topophase/quadrature.hpp"

namespace topophase {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// 2x2 complex block [[a, b], [c, d]].
struct Block2 {
    cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
};

inline void apply_block(const Block2& m, cplx& u, cplx& v) {
    const cplx nu = m.a * u + m.b * v;
    const cplx nv = m.c * u + m.d * v;
    u = nu;
    v = nv;
}

// exp(-i tau H) for the traceless Hermitian block H = [[m, w], [w*, -m]].
Block2 exp_block(double m, cplx w, double tau) {
    const double e = std::sqrt(m * m + std::norm(w));
    const double phase = e * tau;
    const double c = std::cos(phase);
    const double s = e > 1e-300 ? std::sin(phase) / e : tau;
    Block2 out;
    out.a = c - I * s * m;
    out.b = -I * s * w;
    out.c = -I * s * std::conj(w);
    out.d = c + I * s * m;
    return out;
}

void parallel_for(int n, int threads, const std::function<void(int, int)>& body) {
    if (threads <= 1 || n < 2 * threads) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(body, begin, end);
    }
    for (std::thread& t : pool) t.join();
}

double mode_k(int index, int n, double length) {
    const int wrapped = index < n / 2 ? index : index - n;
    return 2.0 * std::numbers::pi * wrapped / length;
}

}  // namespace

// ---------------------------------------------------------------------------
// SpinorState

double SpinorState::norm() const {
    const double cell = grid.hx() * grid.hy();
    double total = 0.0;
    for (const cplx& v : psi) total += std::norm(v);
    return total * cell;
}

Vec2 SpinorState::center_of_mass() const {
    double weight = 0.0, mx = 0.0, my = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy) {
            double density = 0.0;
            for (int c = 0; c < 4; ++c) density += std::norm(at(c, ix, iy));
            const Vec2 p = grid.point(ix, iy);
            weight += density;
            mx += density * p.x;
            my += density * p.y;
        }
    if (weight == 0.0) return {0.0, 0.0};
    return {mx / weight, my / weight};
}

double SpinorState::block_population(int s_hat) const {
    const double cell = grid.hx() * grid.hy();
    const int c0 = s_hat == 1 ? 0 : 2;
    double total = 0.0;
    for (int c = c0; c < c0 + 2; ++c)
        for (int ix = 0; ix < grid.nx; ++ix)
            for (int iy = 0; iy < grid.ny; ++iy) total += std::norm(at(c, ix, iy));
    return total * cell;
}

double SpinorState::norm_in_region(const Rect& region) const {
    const double cell = grid.hx() * grid.hy();
    double total = 0.0;
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy) {
            if (!region.contains(grid.point(ix, iy))) continue;
            for (int c = 0; c < 4; ++c) total += std::norm(at(c, ix, iy));
        }
    return total * cell;
}

// ---------------------------------------------------------------------------
// FFT workspace

namespace {

/// In-place 2D transforms of the four spinor components on fftw buffers.
class SpinorFft {
  public:
    SpinorFft(int nx, int ny, int threads) : nx_(nx), ny_(ny), threads_(threads) {
        const std::size_t n = static_cast<std::size_t>(nx) * ny;
        for (int c = 0; c < 4; ++c)
            buf_[c] = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        fwd_ = fftw_plan_dft_2d(nx, ny, buf_[0], buf_[0], FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_2d(nx, ny, buf_[0], buf_[0], FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~SpinorFft() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        for (int c = 0; c < 4; ++c) fftw_free(buf_[c]);
    }
    SpinorFft(const SpinorFft&) = delete;
    SpinorFft& operator=(const SpinorFft&) = delete;

    cplx* data(int c) { return reinterpret_cast<cplx*>(buf_[c]); }

    void load(const SpinorState& state) {
        const std::size_t n = size();
        for (int c = 0; c < 4; ++c)
            std::copy_n(state.psi.data() + c * n, n, data(c));
    }
    void store(SpinorState& state) const {
        const std::size_t n = size();
        for (int c = 0; c < 4; ++c)
            std::copy_n(reinterpret_cast<const cplx*>(buf_[c]), n,
                        state.psi.data() + c * n);
    }

    void forward() { execute(fwd_, 1.0); }
    void backward() { execute(bwd_, 1.0 / static_cast<double>(size())); }

    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

  private:
    void execute(fftw_plan plan, double scale) {
        const auto run = [&](int c) { fftw_execute_dft(plan, buf_[c], buf_[c]); };
        if (threads_ >= 2) {
            std::vector<std::thread> pool;
            for (int c = 0; c < 4; ++c) pool.emplace_back(run, c);
            for (std::thread& t : pool) t.join();
        } else {
            for (int c = 0; c < 4; ++c) run(c);
        }
        if (scale != 1.0) {
            const std::size_t n = size();
            for (int c = 0; c < 4; ++c) {
                cplx* p = data(c);
                for (std::size_t i = 0; i < n; ++i) p[i] *= scale;
            }
        }
    }

    int nx_, ny_, threads_;
    fftw_complex* buf_[4] = {};
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

}  // namespace

// ---------------------------------------------------------------------------
// Propagator

struct DiracPropagator::Impl {
    Grid2D grid;
    SimParams params;
    // Sampled effective potential (zero inside the guard mask).
    std::vector<double> s1, s2;
    // Precomputed per-mode kinetic blocks for dt/2 and dt, per s block.
    std::vector<Block2> kin_half_u, kin_half_l, kin_full_u, kin_full_l;
    // Pointwise potential blocks for dt.
    std::vector<Block2> pot_u, pot_l;
    mutable SpinorFft fft;

    Impl(const Grid2D& g, const SimParams& p, const FieldConfig& config)
        : grid(g), params(p), fft(g.nx, g.ny, p.threads) {
        if (grid.nx < 2 || grid.ny < 2 || grid.length_x <= 0 || grid.length_y <= 0)
            throw ValidationError("grid must have positive extent and size");
        if (params.mass < 0.0) throw ValidationError("mass must be non-negative");

        for (const auto* list : {&config.electric(), &config.magnetic()})
            for (const PointSource& s : *list)
                if (grid.contains(s.position) && params.source_guard_radius <= 0.0)
                    throw ValidationError(
                        "source inside the grid interior without an exclusion mask");

        sample_potential(config);
        kin_half_u.resize(grid.size());
        kin_half_l.resize(grid.size());
        kin_full_u.resize(grid.size());
        kin_full_l.resize(grid.size());
        build_kinetic(0.5 * params.dt, kin_half_u, kin_half_l);
        build_kinetic(params.dt, kin_full_u, kin_full_l);
        pot_u.resize(grid.size());
        pot_l.resize(grid.size());
        build_potential(params.dt, pot_u, pot_l);
    }

    void sample_potential(const FieldConfig& config) {
        s1.assign(grid.size(), 0.0);
        s2.assign(grid.size(), 0.0);
        if (config.empty() || params.mu_m == 0.0) return;
        for (int ix = 0; ix < grid.nx; ++ix)
            for (int iy = 0; iy < grid.ny; ++iy) {
                const Vec2 p = grid.point(ix, iy);
                if (config.distance_to_sources(p) <= params.source_guard_radius)
                    continue;  // masked: phases are topological, excision is safe
                const std::array<double, 3> s =
                    effective_potential(config, Coupling::AC, p);
                const std::size_t idx = static_cast<std::size_t>(ix) * grid.ny + iy;
                s1[idx] = s[1];
                s2[idx] = s[2];
            }
    }

    // Kinetic blocks: upper H = kx s1 - ky s2 + m s3, lower H with kx -> -kx.
    void build_kinetic(double tau, std::vector<Block2>& up,
                       std::vector<Block2>& lo) const {
        parallel_for(grid.nx, params.threads, [&](int begin, int end) {
            for (int ix = begin; ix < end; ++ix) {
                const double kx = mode_k(ix, grid.nx, grid.length_x);
                for (int iy = 0; iy < grid.ny; ++iy) {
                    const double ky = mode_k(iy, grid.ny, grid.length_y);
                    const std::size_t idx =
                        static_cast<std::size_t>(ix) * grid.ny + iy;
                    up[idx] = exp_block(params.mass, cplx(kx, ky), tau);
                    lo[idx] = exp_block(params.mass, cplx(-kx, ky), tau);
                }
            }
        });
    }

    // Potential blocks: exp(+i tau mu s S_j alpha^j) per point and s block.
    void build_potential(double tau, std::vector<Block2>& up,
                         std::vector<Block2>& lo) const {
        const double mu = params.mu_m;
        parallel_for(grid.nx, params.threads, [&](int begin, int end) {
            for (int ix = begin; ix < end; ++ix)
                for (int iy = 0; iy < grid.ny; ++iy) {
                    const std::size_t idx =
                        static_cast<std::size_t>(ix) * grid.ny + iy;
                    const cplx w_up = -mu * cplx(s1[idx], s2[idx]);
                    const cplx w_lo = -mu * cplx(s1[idx], -s2[idx]);
                    up[idx] = exp_block(0.0, w_up, tau);
                    lo[idx] = exp_block(0.0, w_lo, tau);
                }
        });
    }

    void apply_tables(const std::vector<Block2>& up,
                      const std::vector<Block2>& lo) const {
        cplx* c0 = fft.data(0);
        cplx* c1 = fft.data(1);
        cplx* c2 = fft.data(2);
        cplx* c3 = fft.data(3);
        parallel_for(static_cast<int>(grid.size()), params.threads,
                     [&](int begin, int end) {
                         for (int i = begin; i < end; ++i) {
                             apply_block(up[i], c0[i], c1[i]);
                             apply_block(lo[i], c2[i], c3[i]);
                         }
                     });
    }

    void evolve(SpinorState& state, int n_steps) const {
        if (n_steps <= 0) return;
        fft.load(state);
        fft.forward();
        apply_tables(kin_half_u, kin_half_l);
        for (int i = 0; i < n_steps; ++i) {
            fft.backward();
            apply_tables(pot_u, pot_l);
            if (i + 1 < n_steps) {
                fft.forward();
                apply_tables(kin_full_u, kin_full_l);
            }
        }
        fft.forward();
        apply_tables(kin_half_u, kin_half_l);
        fft.backward();
        fft.store(state);
        state.time += n_steps * params.dt;
    }

    void step_custom(SpinorState& state, double tau) const {
        std::vector<Block2> ku(grid.size()), kl(grid.size());
        std::vector<Block2> vu(grid.size()), vl(grid.size());
        build_kinetic(0.5 * tau, ku, kl);
        build_potential(tau, vu, vl);
        fft.load(state);
        fft.forward();
        apply_tables(ku, kl);
        fft.backward();
        apply_tables(vu, vl);
        fft.forward();
        apply_tables(ku, kl);
        fft.backward();
        fft.store(state);
        state.time += tau;
    }

    void evolve_free_exact(SpinorState& state, double duration) const {
        std::vector<Block2> ku(grid.size()), kl(grid.size());
        build_kinetic(duration, ku, kl);
        fft.load(state);
        fft.forward();
        apply_tables(ku, kl);
        fft.backward();
        fft.store(state);
        state.time += duration;
    }

    Vec2 snap_momentum(Vec2 k) const {
        const double ux = 2.0 * std::numbers::pi / grid.length_x;
        const double uy = 2.0 * std::numbers::pi / grid.length_y;
        return {ux * std::round(k.x / ux), uy * std::round(k.y / uy)};
    }

    void apply_momentum_kick(SpinorState& state, Vec2 delta_k) const {
        const Vec2 dk = snap_momentum(delta_k);
        std::vector<cplx> px(grid.nx), py(grid.ny);
        for (int ix = 0; ix < grid.nx; ++ix)
            px[ix] = std::exp(I * dk.x * grid.point(ix, 0).x);
        for (int iy = 0; iy < grid.ny; ++iy)
            py[iy] = std::exp(I * dk.y * grid.point(0, iy).y);
        for (int c = 0; c < 4; ++c)
            for (int ix = 0; ix < grid.nx; ++ix)
                for (int iy = 0; iy < grid.ny; ++iy)
                    state.at(c, ix, iy) *= px[ix] * py[iy];
    }

    void project_positive_energy(SpinorState& state) const {
        fft.load(state);
        fft.forward();
        cplx* comp[4] = {fft.data(0), fft.data(1), fft.data(2), fft.data(3)};
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double kx = mode_k(ix, grid.nx, grid.length_x);
            for (int iy = 0; iy < grid.ny; ++iy) {
                const double ky = mode_k(iy, grid.ny, grid.length_y);
                const std::size_t i = static_cast<std::size_t>(ix) * grid.ny + iy;
                const double e =
                    std::sqrt(params.mass * params.mass + kx * kx + ky * ky);
                if (e == 0.0) continue;
                // P+ = (I + H/E)/2 per block
                const double m = params.mass;
                {
                    const cplx w(kx, ky);
                    const cplx u = comp[0][i], v = comp[1][i];
                    comp[0][i] = 0.5 * ((1.0 + m / e) * u + w / e * v);
                    comp[1][i] = 0.5 * (std::conj(w) / e * u + (1.0 - m / e) * v);
                }
                {
                    const cplx w(-kx, ky);
                    const cplx u = comp[2][i], v = comp[3][i];
                    comp[2][i] = 0.5 * ((1.0 + m / e) * u + w / e * v);
                    comp[3][i] = 0.5 * (std::conj(w) / e * u + (1.0 - m / e) * v);
                }
            }
        }
        fft.backward();
        fft.store(state);
    }
};

DiracPropagator::DiracPropagator(const Grid2D& grid, const SimParams& params,
                                 const FieldConfig& config)
    : impl_(std::make_unique<Impl>(grid, params, config)) {}
DiracPropagator::~DiracPropagator() = default;

const SimParams& DiracPropagator::params() const { return impl_->params; }
const Grid2D& DiracPropagator::grid() const { return impl_->grid; }
void DiracPropagator::evolve(SpinorState& state, int n_steps) const {
    impl_->evolve(state, n_steps);
}
void DiracPropagator::step_custom(SpinorState& state, double tau) const {
    impl_->step_custom(state, tau);
}
void DiracPropagator::evolve_free_exact(SpinorState& state, double duration) const {
    impl_->evolve_free_exact(state, duration);
}
void DiracPropagator::apply_momentum_kick(SpinorState& state, Vec2 delta_k) const {
    impl_->apply_momentum_kick(state, delta_k);
}
Vec2 DiracPropagator::snap_momentum(Vec2 k) const { return impl_->snap_momentum(k); }
void DiracPropagator::project_positive_energy(SpinorState& state) const {
    impl_->project_positive_energy(state);
}

SpinorState step(const SpinorState& state, const SimParams& params,
                 const FieldConfig& config) {
    DiracPropagator propagator(state.grid, params, config);
    SpinorState next = state;
    propagator.evolve(next, 1);
    return next;
}

// ---------------------------------------------------------------------------
// Wavepacket preparation

SpinorState init_wavepacket(const Grid2D& grid, Vec2 center, Vec2 momentum,
                            double width, double mass, int s_hat) {
    if (s_hat != 1 && s_hat != -1)
        throw ValidationError("s_hat must be +1 or -1");
    const double h = std::max(grid.hx(), grid.hy());
    if (width < 3.0 * h)
        throw ValidationError("packet width is unresolvable on this grid");
    if (std::abs(center.x) + 3.0 * width > 0.5 * grid.length_x ||
        std::abs(center.y) + 3.0 * width > 0.5 * grid.length_y)
        throw ValidationError("packet support reaches the grid boundary");

    SpinorState state;
    state.grid = grid;
    state.psi.assign(4 * grid.size(), cplx{0.0, 0.0});

    SpinorFft fft(grid.nx, grid.ny, 1);
    // scalar envelope times plane wave, on the snapped momentum
    const double ux = 2.0 * std::numbers::pi / grid.length_x;
    const double uy = 2.0 * std::numbers::pi / grid.length_y;
    const Vec2 k0{ux * std::round(momentum.x / ux), uy * std::round(momentum.y / uy)};
    cplx* env = fft.data(0);
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy) {
            const Vec2 p = grid.point(ix, iy);
            const Vec2 d = p - center;
            const double gauss = std::exp(-d.dot(d) / (4.0 * width * width));
            env[static_cast<std::size_t>(ix) * grid.ny + iy] =
                gauss * std::exp(I * (k0.x * d.x + k0.y * d.y));
        }
    // forward transform of the envelope only
    std::fill_n(fft.data(1), grid.size(), cplx{0.0, 0.0});
    std::fill_n(fft.data(2), grid.size(), cplx{0.0, 0.0});
    std::fill_n(fft.data(3), grid.size(), cplx{0.0, 0.0});
    fft.forward();

    // attach the positive-energy spinor of the chosen block per mode
    cplx* c0 = fft.data(s_hat == 1 ? 0 : 2);
    cplx* c1 = fft.data(s_hat == 1 ? 1 : 3);
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double kx = mode_k(ix, grid.nx, grid.length_x);
        for (int iy = 0; iy < grid.ny; ++iy) {
            const double ky = mode_k(iy, grid.ny, grid.length_y);
            const std::size_t i = static_cast<std::size_t>(ix) * grid.ny + iy;
            const double e = std::sqrt(mass * mass + kx * kx + ky * ky);
            const double denom = std::sqrt(2.0 * e * (e + mass));
            cplx u0{1.0, 0.0}, u1{0.0, 0.0};
            if (denom > 0.0) {
                u0 = cplx((e + mass) / denom, 0.0);
                u1 = (s_hat == 1 ? cplx(kx, -ky) : cplx(-kx, -ky)) / denom;
            }
            const cplx base = env[i];
            c1[i] = base * u1;
            c0[i] = base * u0;  // env is reused as c0 when s_hat = +1
        }
    }
    if (s_hat == -1) std::fill_n(fft.data(0), grid.size(), cplx{0.0, 0.0});

    fft.backward();
    fft.store(state);

    const double n = state.norm();
    if (n <= 0.0) throw ValidationError("wavepacket has zero norm");
    const double scale = 1.0 / std::sqrt(n);
    for (cplx& v : state.psi) v *= scale;
    return state;
}

// ---------------------------------------------------------------------------
// Transport interferometry

namespace {

struct ArmOutcome {
    SpinorState state;
    double duration = 0.0;
    double norm_drift = 0.0;
    double opposite_block = 0.0;
};

double relativistic_momentum(double mass, double speed) {
    return mass * speed / std::sqrt(1.0 - speed * speed);
}

}  // namespace

InterferenceResult interfere(const FieldConfig& config, const SimParams& params,
                             const Grid2D& grid, const TwoArmGeometry& geometry,
                             double packet_width, int snapshot_every,
                             std::vector<EvolutionSnapshot>* series) {
    if (geometry.speed <= 0.0 || geometry.speed >= 1.0)
        throw ValidationError("transport speed must lie in (0, 1)");
    if (params.mass <= 0.0)
        throw ValidationError("transport interferometry needs a massive packet");

    const auto arm_vertices = [&](const std::vector<Vec2>& via) {
        std::vector<Vec2> v{geometry.start};
        v.insert(v.end(), via.begin(), via.end());
        v.push_back(geometry.end);
        return v;
    };
    const std::vector<Vec2> arm_a = arm_vertices(geometry.via_a);
    const std::vector<Vec2> arm_b = arm_vertices(geometry.via_b);

    // Enclosing loop: arm A out, arm B back.
    PlanarPath loop;
    loop.closed = true;
    loop.vertices = arm_a;
    for (auto it = geometry.via_b.rbegin(); it != geometry.via_b.rend(); ++it)
        loop.vertices.push_back(*it);
    const PhaseResult reference =
        ac_phase(config, params.mu_m, params.s_hat, loop, 1e-10);

    // Arms must respect the source guard radius.
    for (const std::vector<Vec2>& arm : {arm_a, arm_b}) {
        PlanarPath open_path{arm, false};
        for (const auto* list : {&config.electric(), &config.magnetic()})
            for (const PointSource& s : *list)
                if (distance_to_path(open_path, s.position) <
                    params.source_guard_radius)
                    throw ValidationError(
                        "arm violates the source guard clearance");
    }

    const SpinorState initial = init_wavepacket(grid, geometry.start, {0.0, 0.0},
                                                packet_width, params.mass,
                                                params.s_hat);
    const double k_mag = relativistic_momentum(params.mass, geometry.speed);

    const auto run_arm = [&](const DiracPropagator& propagator,
                             const std::vector<Vec2>& vertices,
                             int arm_id) -> ArmOutcome {
        ArmOutcome out;
        out.state = initial;
        Vec2 k_current{0.0, 0.0};
        const int opposite = -params.s_hat;

        const auto observe = [&]() {
            out.norm_drift =
                std::max(out.norm_drift, std::abs(out.state.norm() - 1.0));
            out.opposite_block = std::max(
                out.opposite_block, out.state.block_population(opposite));
            if (series) {
                EvolutionSnapshot snap;
                snap.arm = arm_id;
                snap.time = out.state.time;
                snap.norm = out.state.norm();
                snap.center_of_mass = out.state.center_of_mass();
                snap.opposite_block_norm = out.state.block_population(opposite);
                series->push_back(snap);
            }
        };

        observe();
        for (std::size_t leg = 0; leg + 1 < vertices.size(); ++leg) {
            const Vec2 delta = vertices[leg + 1] - vertices[leg];
            const double length = delta.norm();
            if (length == 0.0)
                throw ValidationError("arm has a zero-length leg");
            const Vec2 k_target = propagator.snap_momentum(
                {k_mag * delta.x / length, k_mag * delta.y / length});
            if (k_target.norm() == 0.0)
                throw ValidationError("transport momentum snaps to zero; "
                                      "increase speed or grid extent");
            propagator.apply_momentum_kick(out.state, k_target - k_current);
            k_current = k_target;

            const double energy = std::sqrt(params.mass * params.mass +
                                            k_current.dot(k_current));
            const double speed = k_current.norm() / energy;
            const double leg_time = length / speed;
            int steps = static_cast<int>(std::floor(leg_time / params.dt));
            const double remainder = leg_time - steps * params.dt;
            while (steps > 0) {
                const int chunk = snapshot_every > 0
                                      ? std::min(steps, snapshot_every)
                                      : steps;
                propagator.evolve(out.state, chunk);
                steps -= chunk;
                observe();
            }
            if (remainder > 1e-12) propagator.step_custom(out.state, remainder);
            out.duration += leg_time;
            observe();
        }
        // stop the packet at the endpoint
        propagator.apply_momentum_kick(out.state, {-k_current.x, -k_current.y});
        return out;
    };

    struct ProtocolOutcome {
        cplx overlap;
        double norm_drift;
        double opposite_block;
    };
    const auto run_protocol = [&](const FieldConfig& sources) -> ProtocolOutcome {
        const DiracPropagator propagator(grid, params, sources);
        ArmOutcome a = run_arm(propagator, arm_a, 0);
        ArmOutcome b = run_arm(propagator, arm_b, 1);

        // Equalize the dynamical phase: both copies must age equally.
        const auto pad_to = [&](ArmOutcome& arm, double target) {
            const double extra = target - arm.duration;
            if (extra <= 1e-12) return;
            const int steps = static_cast<int>(std::floor(extra / params.dt));
            if (steps > 0) propagator.evolve(arm.state, steps);
            const double rem = extra - steps * params.dt;
            if (rem > 1e-12) propagator.step_custom(arm.state, rem);
            arm.duration = target;
        };
        const double total = std::max(a.duration, b.duration);
        pad_to(a, total);
        pad_to(b, total);

        // Readout: suppress the negative-energy ripples the kicks created,
        // then compare the copies at the common endpoint.
        propagator.project_positive_energy(a.state);
        propagator.project_positive_energy(b.state);
        cplx overlap{0.0, 0.0};
        for (std::size_t i = 0; i < a.state.psi.size(); ++i)
            overlap += std::conj(b.state.psi[i]) * a.state.psi[i];
        overlap *= grid.hx() * grid.hy();
        return {overlap, std::max(a.norm_drift, b.norm_drift),
                std::max(a.opposite_block, b.opposite_block)};
    };

    const ProtocolOutcome with_field = run_protocol(config);
    series = nullptr;  // the no-field reference run is not recorded
    const ProtocolOutcome no_field = run_protocol(FieldConfig{});

    InterferenceResult result;
    result.norm_drift = std::max(with_field.norm_drift, no_field.norm_drift);
    result.opposite_block_norm =
        std::max(with_field.opposite_block, no_field.opposite_block);
    result.raw_phase = std::arg(with_field.overlap);
    result.reference_phase = std::arg(no_field.overlap);
    double relative = result.raw_phase - result.reference_phase;
    while (relative > std::numbers::pi) relative -= 2.0 * std::numbers::pi;
    while (relative <= -std::numbers::pi) relative += 2.0 * std::numbers::pi;
    result.extracted_phase = relative;
    result.contrast = std::abs(with_field.overlap);
    result.analytic_theta = reference.theta;
    result.discrepancy = std::abs(result.extracted_phase - reference.theta);
    result.reference = reference;
    return result;
}

// ---------------------------------------------------------------------------
// Gauge equivalence

GaugeEquivalenceResult gauge_equivalence(const FieldConfig& config,
                                         const SimParams& params,
                                         const Grid2D& grid, const Rect& region,
                                         double duration, Vec2 packet_center,
                                         Vec2 packet_momentum,
                                         double packet_width, Vec2 base_point) {
    if (duration <= 0.0) throw ValidationError("duration must be positive");
    if (!region.contains(packet_center) || !region.contains(base_point))
        throw ValidationError("packet center and base point must lie in the region");
    for (const auto* list : {&config.electric(), &config.magnetic()})
        for (const PointSource& s : *list)
            if (region.contains(s.position))
                throw ValidationError("region must be source-free");

    const SpinorState initial = init_wavepacket(grid, packet_center,
                                                packet_momentum, packet_width,
                                                params.mass, params.s_hat);

    // Interacting evolution over an integer number of steps.
    const int steps = std::max(1, static_cast<int>(std::round(duration / params.dt)));
    const DiracPropagator propagator(grid, params, config);
    SpinorState interacting = initial;
    propagator.evolve(interacting, steps);
    const double realized = steps * params.dt;

    // Reference: free evolution of the transformed state, dressed back with
    // the accumulated phase along straight paths from the base point.
    std::vector<double> chi(grid.size(), 0.0);
    const double clearance = std::max(params.source_guard_radius, 1e-9);
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy) {
            const Vec2 p = grid.point(ix, iy);
            bool reachable = true;
            for (const auto* list : {&config.electric(), &config.magnetic()})
                for (const PointSource& s : *list)
                    if (distance_to_segment(base_point, p, s.position) < clearance)
                        reachable = false;
            if (!reachable) continue;  // unreachable tail; left undressed
            const Vec2 d = p - base_point;
            if (d.norm() == 0.0) continue;
            const auto integrand = [&](double t) {
                const std::array<double, 3> s =
                    effective_potential(config, Coupling::AC, base_point + t * d);
                return s[1] * d.x + s[2] * d.y;
            };
            chi[static_cast<std::size_t>(ix) * grid.ny + iy] =
                adaptive_integrate(integrand, 0.0, 1.0, 1e-12).value;
        }

    const auto dress = [&](SpinorState& state, double sign) {
        for (int ix = 0; ix < grid.nx; ++ix)
            for (int iy = 0; iy < grid.ny; ++iy) {
                const std::size_t i = static_cast<std::size_t>(ix) * grid.ny + iy;
                // s_op-weighted phase: opposite sign on the two blocks
                const cplx up = std::exp(I * sign * params.mu_m * chi[i]);
                const cplx dn = std::conj(up);
                state.at(0, ix, iy) *= up;
                state.at(1, ix, iy) *= up;
                state.at(2, ix, iy) *= dn;
                state.at(3, ix, iy) *= dn;
            }
    };

    SpinorState dressed = initial;
    dress(dressed, -1.0);
    propagator.evolve_free_exact(dressed, realized);
    dress(dressed, +1.0);

    cplx overlap{0.0, 0.0};
    for (std::size_t i = 0; i < interacting.psi.size(); ++i)
        overlap += std::conj(interacting.psi[i]) * dressed.psi[i];
    overlap *= grid.hx() * grid.hy();

    GaugeEquivalenceResult result;
    result.fidelity = std::abs(overlap);
    result.leaked_norm = interacting.norm() - interacting.norm_in_region(region);
    result.norm_drift = std::abs(interacting.norm() - 1.0);
    result.duration = realized;
    return result;
}

}  // namespace topophase
