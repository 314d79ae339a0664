#include "pwframes/pwframes.h"

#include <cstring>
#include <fstream>
#include <string>

#include "pwframes/experiment.hpp"
#include "pwframes/fourier_line.hpp"
#include "pwframes/upper_half_plane.hpp"

using namespace pwframes;

struct pwf_model {
    ModelPtr ptr;
};
struct pwf_function {
    PwFunction fn;
};
struct pwf_lattice {
    Lattice lattice;
};
struct pwf_family {
    FunctionalFamily family;
};
struct pwf_frame {
    FrameSystem frame;
};

namespace {

thread_local std::string g_last_error;

pwf_status fail(pwf_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
pwf_status guarded(Fn&& fn) {
    g_last_error.clear();
    try {
        fn();
        return PWF_OK;
    } catch (const ConfigError& e) {
        return fail(PWF_ERR_INVALID_CONFIG, e.what());
    } catch (const NotCertifiedError& e) {
        return fail(PWF_ERR_NOT_CERTIFIED, e.what());
    } catch (const DomainError& e) {
        return fail(PWF_ERR_DOMAIN, e.what());
    } catch (const Error& e) {
        return fail(PWF_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(PWF_ERR_INTERNAL, e.what());
    }
}

pwf_status require(bool condition, const char* message) {
    return condition ? PWF_OK : fail(PWF_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* pwf_last_error(void) { return g_last_error.c_str(); }

pwf_status pwf_model_fourier(double omega, int k, const char* rule, pwf_model** out) {
    if (require(out && rule, "null argument") != PWF_OK) return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        QuadRule quad;
        if (std::strcmp(rule, "midpoint") == 0)
            quad = QuadRule::Midpoint;
        else if (std::strcmp(rule, "trapezoid") == 0)
            quad = QuadRule::Trapezoid;
        else
            throw Error("rule must be 'midpoint' or 'trapezoid'");
        *out = new pwf_model{build_fourier_model(omega, k, quad)};
    });
}

pwf_status pwf_model_helgason(double omega, int k_t, int k_phi, pwf_model** out) {
    if (require(out != nullptr, "null argument") != PWF_OK) return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = new pwf_model{build_helgason_model(omega, k_t, k_phi)}; });
}

int pwf_model_size(const pwf_model* model) {
    return model ? model->ptr->node_count() : 0;
}

void pwf_model_free(pwf_model* model) { delete model; }

pwf_status pwf_function_random(const pwf_model* model, uint64_t seed, pwf_function** out) {
    if (require(model && out, "null argument") != PWF_OK) return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = new pwf_function{random_pw(model->ptr, seed)}; });
}

pwf_status pwf_function_create(const pwf_model* model, const double* re, const double* im,
                               size_t n, pwf_function** out) {
    if (require(model && re && im && out, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        Eigen::VectorXcd c(static_cast<Eigen::Index>(n));
        for (size_t i = 0; i < n; ++i) c[static_cast<Eigen::Index>(i)] = Complex(re[i], im[i]);
        *out = new pwf_function{PwFunction(model->ptr, std::move(c))};
    });
}

pwf_status pwf_function_coeffs(const pwf_function* f, double* re, double* im, size_t n) {
    if (require(f && re && im, "null argument") != PWF_OK) return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        if (static_cast<Eigen::Index>(n) != f->fn.coeff().size())
            throw Error("coefficient buffer length mismatch");
        for (size_t i = 0; i < n; ++i) {
            re[i] = f->fn.coeff()[static_cast<Eigen::Index>(i)].real();
            im[i] = f->fn.coeff()[static_cast<Eigen::Index>(i)].imag();
        }
    });
}

pwf_status pwf_function_evaluate(const pwf_function* f, double x, double y, double* out_re,
                                 double* out_im) {
    if (require(f && out_re && out_im, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Complex v = evaluate(f->fn, {x, y});
        *out_re = v.real();
        *out_im = v.imag();
    });
}

double pwf_function_norm(const pwf_function* f) { return f ? norm(f->fn) : 0.0; }

void pwf_function_free(pwf_function* f) { delete f; }

pwf_status pwf_lattice_build(const pwf_model* model, double x_lo, double x_hi, double y_lo,
                             double y_hi, double rho, int candidate_count, uint64_t seed,
                             pwf_lattice** out) {
    if (require(model && out, "null argument") != PWF_OK) return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const DomainBox box{x_lo, x_hi, y_lo, y_hi};
        *out = new pwf_lattice{build_lattice(*model->ptr, box, rho, candidate_count, seed)};
    });
}

int pwf_lattice_size(const pwf_lattice* lattice) {
    return lattice ? static_cast<int>(lattice->lattice.points.size()) : 0;
}

pwf_status pwf_lattice_point(const pwf_lattice* lattice, int index, double* x, double* y) {
    if (require(lattice && x && y, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto& points = lattice->lattice.points;
        if (index < 0 || index >= static_cast<int>(points.size()))
            throw Error("lattice index out of range");
        *x = points[static_cast<std::size_t>(index)].x;
        *y = points[static_cast<std::size_t>(index)].y;
    });
}

pwf_status pwf_lattice_certificate(const pwf_lattice* lattice, double* min_pairwise_distance,
                                   double* covering_radius, int* multiplicity_bound) {
    if (require(lattice && min_pairwise_distance && covering_radius && multiplicity_bound,
                "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    *min_pairwise_distance = lattice->lattice.certificate.min_pairwise_distance;
    *covering_radius = lattice->lattice.certificate.covering_radius;
    *multiplicity_bound = lattice->lattice.certificate.multiplicity_bound;
    g_last_error.clear();
    return PWF_OK;
}

pwf_status pwf_lattice_write_csv(const pwf_lattice* lattice, const pwf_model* model,
                                 const char* path) {
    if (require(lattice && model && path, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(std::string("cannot write file: ") + path);
        write_lattice_csv(lattice->lattice, model->ptr->point_kind(), out);
    });
}

void pwf_lattice_free(pwf_lattice* lattice) { delete lattice; }

pwf_status pwf_family_create(const pwf_model* model, const pwf_lattice* lattice,
                             const char* kind, const double* masses, size_t mass_count,
                             int sub_count, double sub_radius, int order_n, double c_phi,
                             double big_c_phi, uint64_t seed, pwf_family** out) {
    if (require(model && lattice && kind && out, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        FunctionalKind fk;
        if (std::strcmp(kind, "dirac") == 0)
            fk = FunctionalKind::Dirac;
        else if (std::strcmp(kind, "weighted_diracs") == 0)
            fk = FunctionalKind::WeightedDiracs;
        else if (std::strcmp(kind, "ball_average") == 0)
            fk = FunctionalKind::BallAverage;
        else
            throw Error("kind must be 'dirac', 'weighted_diracs' or 'ball_average'");
        FamilyParams params;
        if (masses && mass_count > 0)
            params.masses.assign(masses, masses + mass_count);
        params.sub_count = sub_count > 0 ? sub_count : 3;
        params.sub_radius = sub_radius;
        *out = new pwf_family{make_functional_family(*model->ptr, lattice->lattice, fk,
                                                     params, order_n, c_phi, big_c_phi,
                                                     seed)};
    });
}

int pwf_family_size(const pwf_family* family) {
    return family ? static_cast<int>(family->family.functionals.size()) : 0;
}

void pwf_family_free(pwf_family* family) { delete family; }

pwf_status pwf_frame_build(const pwf_family* family, const pwf_model* model,
                           const char* multiplier, pwf_frame** out) {
    if (require(family && model && multiplier && out, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        MultiplierKind mk;
        if (std::strcmp(multiplier, "shifted") == 0)
            mk = MultiplierKind::Shifted;
        else if (std::strcmp(multiplier, "pure") == 0)
            mk = MultiplierKind::Pure;
        else
            throw Error("multiplier must be 'shifted' or 'pure'");
        *out = new pwf_frame{build_frame(family->family, model->ptr, mk)};
    });
}

pwf_status pwf_frame_bounds(const pwf_frame* frame, double* lower, double* upper,
                            int* certified) {
    if (require(frame && lower && upper && certified, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    *lower = frame->frame.bounds().lower;
    *upper = frame->frame.bounds().upper;
    *certified = frame->frame.certified() ? 1 : 0;
    g_last_error.clear();
    return PWF_OK;
}

int pwf_frame_size(const pwf_frame* frame) { return frame ? frame->frame.size() : 0; }

pwf_status pwf_frame_analysis(const pwf_frame* frame, const pwf_function* f, double* re,
                              double* im) {
    if (require(frame && f && re && im, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const Eigen::VectorXcd v = analysis(frame->frame, f->fn);
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            re[j] = v[j].real();
            im[j] = v[j].imag();
        }
    });
}

pwf_status pwf_frame_reconstruct(const pwf_frame* frame, const double* sample_re,
                                 const double* sample_im, size_t n, double tol, int max_iter,
                                 int accelerated, pwf_function** out, int* iterations,
                                 double* final_residual) {
    if (require(frame && sample_re && sample_im && out, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        Eigen::VectorXcd samples(static_cast<Eigen::Index>(n));
        for (size_t j = 0; j < n; ++j)
            samples[static_cast<Eigen::Index>(j)] = Complex(sample_re[j], sample_im[j]);
        ReconstructionReport report;
        const SolverMode mode =
            accelerated ? SolverMode::ConjugateGradient : SolverMode::Richardson;
        PwFunction g = reconstruct(frame->frame, samples, tol, max_iter, mode, nullptr,
                                   &report);
        if (iterations) *iterations = report.iterations;
        if (final_residual)
            *final_residual = report.residuals.empty() ? 0.0 : report.residuals.back();
        *out = new pwf_function{std::move(g)};
    });
}

void pwf_frame_free(pwf_frame* frame) { delete frame; }

pwf_status pwf_run(const char* command, const char* config_path, const char* out_dir,
                   int64_t seed_override) {
    if (require(command && config_path && out_dir, "null argument") != PWF_OK)
        return PWF_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        ExperimentConfig config = load_config_file(config_path);
        if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
        CommandResult result;
        if (std::strcmp(command, "lattice") == 0)
            result = cmd_lattice(config, out_dir);
        else if (std::strcmp(command, "reconstruct") == 0)
            result = cmd_reconstruct(config, out_dir);
        else if (std::strcmp(command, "sweep") == 0)
            result = cmd_sweep(config, out_dir);
        else
            throw Error("command must be 'lattice', 'reconstruct' or 'sweep'");
        if (result.exit_code == 2) throw NotCertifiedError(result.message);
        if (result.exit_code != 0) throw Error(result.message);
    });
}

}  // extern "C"
