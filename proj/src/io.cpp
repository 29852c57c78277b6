#include "scsamp/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#ifndef SCSAMP_GIT_DESCRIBE
#define SCSAMP_GIT_DESCRIBE "unknown"
#endif

namespace scsamp {

using nlohmann::json;

namespace {

void write_blob(const std::filesystem::path& path, const double* data, std::size_t count) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> read_blob(const std::filesystem::path& path, std::size_t count) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    const auto size = static_cast<std::size_t>(in.tellg());
    if (size != count * sizeof(double))
        throw std::runtime_error("unexpected size of " + path.string());
    std::vector<double> data(count);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(size));
    if (!in) throw std::runtime_error("read failed: " + path.string());
    return data;
}

void write_sidecar(const std::filesystem::path& base, Eigen::Index rows, Eigen::Index cols,
                   const char* dtype) {
    json side{{"shape", {rows, cols}}, {"dtype", dtype}, {"order", "row-major"}};
    write_json(base.string() + ".json", side);
}

std::pair<Eigen::Index, Eigen::Index> read_sidecar(const std::filesystem::path& base,
                                                   const char* dtype) {
    const json side = read_json(base.string() + ".json");
    if (side.at("dtype").get<std::string>() != dtype)
        throw std::runtime_error("dtype mismatch in " + base.string() + ".json");
    const auto shape = side.at("shape");
    return {shape.at(0).get<Eigen::Index>(), shape.at(1).get<Eigen::Index>()};
}

}  // namespace

void save_matrix(const std::filesystem::path& base, const RMat& m) {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
    write_blob(base.string() + ".bin", rm.data(), static_cast<std::size_t>(rm.size()));
    write_sidecar(base, m.rows(), m.cols(), "float64");
}

void save_matrix(const std::filesystem::path& base, const CMat& m) {
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
    write_blob(base.string() + ".bin", reinterpret_cast<const double*>(rm.data()),
               static_cast<std::size_t>(rm.size()) * 2);
    write_sidecar(base, m.rows(), m.cols(), "complex128");
}

RMat load_rmatrix(const std::filesystem::path& base) {
    const auto [rows, cols] = read_sidecar(base, "float64");
    const auto data = read_blob(base.string() + ".bin", static_cast<std::size_t>(rows * cols));
    RMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = data[static_cast<std::size_t>(i * cols + j)];
    return m;
}

CMat load_cmatrix(const std::filesystem::path& base) {
    const auto [rows, cols] = read_sidecar(base, "complex128");
    const auto data = read_blob(base.string() + ".bin", static_cast<std::size_t>(rows * cols) * 2);
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const std::size_t k = 2 * static_cast<std::size_t>(i * cols + j);
            m(i, j) = cplx(data[k], data[k + 1]);
        }
    return m;
}

void to_json(json& j, const GridConfig& cfg) {
    j = json{{"M", cfg.M},         {"W", cfg.W},         {"M1", cfg.M1},  {"M2", cfg.M2},
             {"Omega", cfg.Omega}, {"Delta", cfg.Delta}, {"seed", cfg.seed}};
}

void from_json(const json& j, GridConfig& cfg) {
    j.at("M").get_to(cfg.M);
    j.at("W").get_to(cfg.W);
    j.at("M1").get_to(cfg.M1);
    j.at("M2").get_to(cfg.M2);
    j.at("Omega").get_to(cfg.Omega);
    j.at("Delta").get_to(cfg.Delta);
    cfg.seed = j.value("seed", std::uint64_t{0});
}

void save_ensemble(const std::filesystem::path& dir, const EnsembleModel& ens) {
    std::filesystem::create_directories(dir);
    json man{{"M", ens.M},
             {"W", ens.W},
             {"R", ens.R},
             {"S", ens.S},
             {"mode", ens.mode == EnsembleMode::Signal ? "signal" : "matrix"},
             {"conj_symmetric", ens.conj_symmetric},
             {"support", ens.support},
             {"seed", ens.seed},
             {"dof", ens.dof()}};
    write_json(dir / "manifest.json", man);
    save_matrix(dir / "C", ens.C);
    save_matrix(dir / "mixing", ens.mixing);
    save_matrix(dir / "latent", ens.latent);
}

EnsembleModel load_ensemble(const std::filesystem::path& dir) {
    const json man = read_json(dir / "manifest.json");
    EnsembleModel ens;
    man.at("M").get_to(ens.M);
    man.at("W").get_to(ens.W);
    man.at("R").get_to(ens.R);
    man.at("S").get_to(ens.S);
    ens.mode = man.at("mode").get<std::string>() == "signal" ? EnsembleMode::Signal
                                                             : EnsembleMode::Matrix;
    man.at("conj_symmetric").get_to(ens.conj_symmetric);
    man.at("support").get_to(ens.support);
    ens.seed = man.value("seed", std::uint64_t{0});
    ens.C = load_cmatrix(dir / "C");
    ens.mixing = load_rmatrix(dir / "mixing");
    ens.latent = load_cmatrix(dir / "latent");
    return ens;
}

void save_operator_set(const std::filesystem::path& dir, const OperatorSet& ops) {
    std::filesystem::create_directories(dir);
    json man{{"config", ops.cfg}};
    write_json(dir / "manifest.json", man);
    save_matrix(dir / "A", ops.A);
    save_matrix(dir / "D", RMat(ops.D));
}

OperatorSet load_operator_set(const std::filesystem::path& dir) {
    const json man = read_json(dir / "manifest.json");
    GridConfig cfg = man.at("config").get<GridConfig>();
    cfg.validate();
    OperatorSet ops;
    ops.cfg = cfg;
    ops.A = load_rmatrix(dir / "A");
    const RMat d = load_rmatrix(dir / "D");
    ops.D = d.col(0);
    ops.F = dft_matrix(cfg.W);
    ops.T = lpf_diag(cfg.W);
    const CMat DF = ops.D.asDiagonal() * ops.F;
    ops.Q1 = summing_matrix(cfg.Omega, cfg.W) * DF;
    ops.Q2 = summing_matrix(cfg.Delta, cfg.W) * DF;
    return ops;
}

void save_measurements(const std::filesystem::path& dir, const MeasurementSet& meas) {
    std::filesystem::create_directories(dir);
    json man{{"config", meas.cfg},
             {"delta1", meas.delta1},
             {"delta2", meas.delta2},
             {"noise_seed", meas.noise_seed}};
    if (std::isfinite(meas.snr_db)) man["snr_db"] = meas.snr_db;
    write_json(dir / "manifest.json", man);
    save_matrix(dir / "Y1", meas.Y1);
    save_matrix(dir / "Y2", meas.Y2);
}

MeasurementSet load_measurements(const std::filesystem::path& dir) {
    const json man = read_json(dir / "manifest.json");
    MeasurementSet meas;
    meas.cfg = man.at("config").get<GridConfig>();
    man.at("delta1").get_to(meas.delta1);
    man.at("delta2").get_to(meas.delta2);
    meas.noise_seed = man.value("noise_seed", std::uint64_t{0});
    if (man.contains("snr_db")) meas.snr_db = man["snr_db"].get<double>();
    meas.Y1 = load_cmatrix(dir / "Y1");
    meas.Y2 = load_cmatrix(dir / "Y2");
    return meas;
}

void save_recovery_result(const std::filesystem::path& dir, const RecoveryResult& rec) {
    std::filesystem::create_directories(dir);
    json rows = json::array();
    for (const auto& r : rec.row_diags)
        rows.push_back({{"iterations", r.iterations},
                        {"residual", r.residual},
                        {"lambda", r.lambda},
                        {"converged", r.converged}});
    std::vector<double> sv(rec.yc_singular_values.data(),
                           rec.yc_singular_values.data() + rec.yc_singular_values.size());
    json man{{"l1_converged", rec.l1_converged},
             {"l1_total_iterations", rec.l1_total_iterations},
             {"rank_deficient", rec.rank_deficient},
             {"yc_singular_values", sv},
             {"row_diagnostics", rows}};
    write_json(dir / "manifest.json", man);
    save_matrix(dir / "Yc", rec.Yc);
    save_matrix(dir / "Yr", rec.Yr);
    save_matrix(dir / "L_R", rec.L_R);
    save_matrix(dir / "S_mat", rec.S_mat);
    save_matrix(dir / "H_hat", rec.H_hat);
    save_matrix(dir / "X_hat", rec.X_hat);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

const char* git_describe() { return SCSAMP_GIT_DESCRIBE; }

json run_manifest(const json& config_echo, std::uint64_t root_seed, double wall_time_s) {
    const auto now = std::chrono::system_clock::now();
    return json{{"config", config_echo},
                {"root_seed", root_seed},
                {"build", git_describe()},
                {"wall_time_s", wall_time_s},
                {"unix_time", std::chrono::duration_cast<std::chrono::seconds>(
                                  now.time_since_epoch())
                                  .count()}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    json j;
    in >> j;
    return j;
}

}  // namespace scsamp
