// Exercises the extern-C surface of the shared library: handle lifecycles,
// error-code mapping, and a full reconstruction round trip.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pwframes/pwframes.h"

namespace fs = std::filesystem;

TEST_CASE("model creation and argument validation") {
    pwf_model* model = nullptr;
    CHECK(pwf_model_fourier(0.5, 16, "midpoint", &model) == PWF_OK);
    REQUIRE(model != nullptr);
    CHECK(pwf_model_size(model) == 16);
    pwf_model_free(model);

    model = nullptr;
    CHECK(pwf_model_fourier(0.5, 1, "midpoint", &model) == PWF_ERR_INVALID_ARGUMENT);
    CHECK(model == nullptr);
    CHECK(std::strlen(pwf_last_error()) > 0);

    CHECK(pwf_model_fourier(0.5, 8, "gauss", &model) == PWF_ERR_INVALID_ARGUMENT);
    CHECK(pwf_model_helgason(2.0, 7, 4, &model) == PWF_ERR_INVALID_ARGUMENT);

    pwf_model* hyp = nullptr;
    CHECK(pwf_model_helgason(2.0, 4, 4, &hyp) == PWF_OK);
    CHECK(pwf_model_size(hyp) == 16);
    pwf_model_free(hyp);
}

TEST_CASE("function round trip: coefficients, norm, evaluation domain") {
    pwf_model* model = nullptr;
    REQUIRE(pwf_model_helgason(1.5, 2, 3, &model) == PWF_OK);
    const int k = pwf_model_size(model);

    pwf_function* f = nullptr;
    REQUIRE(pwf_function_random(model, 7, &f) == PWF_OK);
    CHECK(pwf_function_norm(f) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> re(static_cast<std::size_t>(k)), im(static_cast<std::size_t>(k));
    CHECK(pwf_function_coeffs(f, re.data(), im.data(), re.size()) == PWF_OK);
    pwf_function* copy = nullptr;
    CHECK(pwf_function_create(model, re.data(), im.data(), re.size(), &copy) == PWF_OK);

    double ar, ai, br, bi;
    CHECK(pwf_function_evaluate(f, 0.3, 1.2, &ar, &ai) == PWF_OK);
    CHECK(pwf_function_evaluate(copy, 0.3, 1.2, &br, &bi) == PWF_OK);
    CHECK(ar == doctest::Approx(br));
    CHECK(ai == doctest::Approx(bi));

    CHECK(pwf_function_evaluate(f, 0.3, -1.0, &ar, &ai) == PWF_ERR_DOMAIN);

    pwf_function_free(copy);
    pwf_function_free(f);
    pwf_model_free(model);
}

TEST_CASE("lattice, family, frame, reconstruction through the C API") {
    pwf_model* model = nullptr;
    REQUIRE(pwf_model_helgason(2.0, 2, 3, &model) == PWF_OK);

    pwf_lattice* lattice = nullptr;
    REQUIRE(pwf_lattice_build(model, -2.0, 2.0, 0.5, 4.0, 0.25, 0, 1, &lattice) == PWF_OK);
    const int j_count = pwf_lattice_size(lattice);
    CHECK(j_count >= 2 * pwf_model_size(model));

    double min_pairwise = 0, covering = 0;
    int multiplicity = 0;
    CHECK(pwf_lattice_certificate(lattice, &min_pairwise, &covering, &multiplicity) ==
          PWF_OK);
    CHECK(min_pairwise >= 0.125);

    double x = 0, y = 0;
    CHECK(pwf_lattice_point(lattice, 0, &x, &y) == PWF_OK);
    CHECK(y > 0.0);
    CHECK(pwf_lattice_point(lattice, j_count + 1, &x, &y) == PWF_ERR_INVALID_ARGUMENT);

    pwf_family* family = nullptr;
    const double mass = 1.0;
    REQUIRE(pwf_family_create(model, lattice, "dirac", &mass, 1, 0, 0.0, 0, 0.5, 2.0, 3,
                              &family) == PWF_OK);
    CHECK(pwf_family_size(family) == j_count);

    pwf_frame* frame = nullptr;
    REQUIRE(pwf_frame_build(family, model, "shifted", &frame) == PWF_OK);
    double lower = 0, upper = 0;
    int certified = 0;
    CHECK(pwf_frame_bounds(frame, &lower, &upper, &certified) == PWF_OK);
    CHECK(certified == 1);
    CHECK(lower > 0.0);
    CHECK(upper >= lower);

    pwf_function* truth = nullptr;
    REQUIRE(pwf_function_random(model, 99, &truth) == PWF_OK);
    std::vector<double> sre(static_cast<std::size_t>(j_count));
    std::vector<double> sim(static_cast<std::size_t>(j_count));
    REQUIRE(pwf_frame_analysis(frame, truth, sre.data(), sim.data()) == PWF_OK);

    pwf_function* recovered = nullptr;
    int iterations = 0;
    double residual = 0.0;
    REQUIRE(pwf_frame_reconstruct(frame, sre.data(), sim.data(), sre.size(), 1e-9, 0, 0,
                                  &recovered, &iterations, &residual) == PWF_OK);
    CHECK(iterations > 0);
    CHECK(residual <= 1e-9);

    // compare coefficientwise
    const int k = pwf_model_size(model);
    std::vector<double> tre(static_cast<std::size_t>(k)), tim(static_cast<std::size_t>(k));
    std::vector<double> rre(static_cast<std::size_t>(k)), rim(static_cast<std::size_t>(k));
    REQUIRE(pwf_function_coeffs(truth, tre.data(), tim.data(), tre.size()) == PWF_OK);
    REQUIRE(pwf_function_coeffs(recovered, rre.data(), rim.data(), rre.size()) == PWF_OK);
    double err = 0.0;
    for (int m = 0; m < k; ++m)
        err += std::hypot(tre[(std::size_t)m] - rre[(std::size_t)m],
                          tim[(std::size_t)m] - rim[(std::size_t)m]);
    CHECK(err < 1e-5);

    pwf_function_free(recovered);
    pwf_function_free(truth);
    pwf_frame_free(frame);
    pwf_family_free(family);
    pwf_lattice_free(lattice);
    pwf_model_free(model);
}

TEST_CASE("pure multiplier on a spectrum reaching zero maps to an argument error") {
    pwf_model* model = nullptr;
    REQUIRE(pwf_model_fourier(0.5, 17, "midpoint", &model) == PWF_OK);  // t=0 node
    pwf_lattice* lattice = nullptr;
    REQUIRE(pwf_lattice_build(model, 0.0, 40.0, 0.0, 0.0, 2.0, 0, 1, &lattice) == PWF_OK);
    pwf_family* family = nullptr;
    const double mass = 1.0;
    REQUIRE(pwf_family_create(model, lattice, "dirac", &mass, 1, 0, 0.0, 1, 0.5, 2.0, 3,
                              &family) == PWF_OK);
    pwf_frame* frame = nullptr;
    CHECK(pwf_frame_build(family, model, "pure", &frame) == PWF_ERR_INVALID_ARGUMENT);
    CHECK(std::string(pwf_last_error()).find("bounded away from zero") !=
          std::string::npos);
    pwf_family_free(family);
    pwf_lattice_free(lattice);
    pwf_model_free(model);
}

TEST_CASE("pwf_run drives the harness and maps exit conditions") {
    const fs::path dir = fs::temp_directory_path() / "pwframes_capi_run";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path config_path = dir / "config.json";
    {
        std::ofstream out(config_path);
        out << R"json({
          "model": {"kind": "euclid1d", "omega": 0.5, "K": 8},
          "domain": {"x": [0.0, 1.0]},
          "rho": 0.2,
          "seed": 1
        })json";
    }
    CHECK(pwf_run("lattice", config_path.string().c_str(), (dir / "out").string().c_str(),
                  -1) == PWF_OK);
    CHECK(fs::exists(dir / "out" / "lattice.csv"));

    CHECK(pwf_run("dance", config_path.string().c_str(), (dir / "out").string().c_str(),
                  -1) == PWF_ERR_INVALID_ARGUMENT);

    const fs::path bad_config = dir / "bad.json";
    {
        std::ofstream out(bad_config);
        out << R"json({"model": {"kind": "euclid1d", "omega": 0.5, "K": 8},
                       "domain": {"x": [0.0, 1.0]}, "rho": 0.2, "intruder": true})json";
    }
    CHECK(pwf_run("lattice", bad_config.string().c_str(),
                  (dir / "out").string().c_str(), -1) == PWF_ERR_INVALID_CONFIG);
    CHECK(std::string(pwf_last_error()).find("intruder") != std::string::npos);
}
