#include "tterel/figures.hpp"

#include <cmath>
#include <cstdio>

#include "tterel/error.hpp"
#include "tterel/model.hpp"
#include "tterel/residual.hpp"

namespace tterel {

namespace {

// Figure abscissae stop where the fastest-decaying curve reaches this level.
constexpr double kFigureSurvivalFloor = 1e-3;

std::vector<double> linspace_open(double x_max, std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 1; i <= n; ++i)
        pts[i - 1] = x_max * static_cast<double>(i) / static_cast<double>(n);
    return pts;
}

FigureTable hazard_figure(const std::string& name, std::vector<LifetimeFunctions> curves,
                          std::vector<std::string> labels, std::size_t points,
                          double fixed_t_max = 0.0) {
    double t_max = fixed_t_max;
    if (t_max <= 0.0) {
        // First curve is the fastest-decaying one by construction.
        t_max = solve_decreasing_level(curves.front().log_survival, std::log(kFigureSurvivalFloor));
    }
    FigureTable table;
    table.name = name;
    table.columns.push_back("t");
    for (auto& l : labels) table.columns.push_back(std::move(l));
    for (double t : linspace_open(t_max, points)) {
        std::vector<double> row{t};
        for (const auto& c : curves) row.push_back(c.hazard(t));
        table.rows.push_back(std::move(row));
    }
    return table;
}

FigureTable fig1(const std::string& name, const Generator& gen, std::size_t points) {
    TTEModel model(gen, {AgingFunction::exp_minus_one(2.0, 1.0), AgingFunction::exp_minus_one(1.0, 1.0)},
                   Structure::series(2));
    return hazard_figure(name,
                         {series_lifetime(model, {1, 2}), marginal(model, 1), marginal(model, 2)},
                         {"haz_x12", "haz_x1", "haz_x2"}, points);
}

FigureTable fig2(std::size_t points) {
    TTEModel model(Generator::clayton(1.0 / 3.0, 1.0 / 3.0),
                   {AgingFunction::exp_minus_one(1.0, 10.0), AgingFunction::linear(1.0)},
                   Structure::series(2));
    return hazard_figure("fig2", {series_lifetime(model, {1, 2}), parallel_lifetime(model)},
                         {"haz_x12", "haz_x22"}, points, 5.0);
}

FigureTable fig3(std::size_t points) {
    PhiFunction phi1 = make_phi(Generator::clayton(1.0, 1.0), Structure::aircraft4());
    PhiFunction phi2 = make_phi(Generator::clayton(1.0, 3.0), Structure::aircraft4());
    FigureTable table;
    table.name = "fig3";
    table.columns = {"x", "phi1", "phi2", "ratio"};
    for (double x : linspace_open(10.0, points)) {
        const double v1 = phi1.value(x);
        const double v2 = phi2.value(x);
        table.rows.push_back({x, v1, v2, v2 / v1});
    }
    return table;
}

FigureTable fig4(std::size_t points) {
    TTEModel model(Generator::gumbel_barnett(0.5),
                   {AgingFunction::exp_minus_one(1.0, 10.0), AgingFunction::exp_minus_one(1.0, 5.0),
                    AgingFunction::linear(1.0)},
                   Structure::series(3));
    const IndexSet P{1, 2};
    const double t = 1.0;
    LifetimeFunctions usual = residual_series({model, t, ResidualKind::Usual}, P);
    LifetimeFunctions all_alive = residual_series({model, t, ResidualKind::SystemLevel}, P);
    const double x_max =
        solve_decreasing_level(usual.log_survival, std::log(kFigureSurvivalFloor));
    FigureTable table;
    table.name = "fig4";
    table.columns = {"x", "res_usual", "res_all_alive", "ratio"};
    for (double x : linspace_open(x_max, points)) {
        const double fu = usual.survival(x);
        const double fs = all_alive.survival(x);
        table.rows.push_back({x, fu, fs, fs / fu});
    }
    return table;
}

}  // namespace

std::vector<std::string> figure_names() {
    return {"fig1_left", "fig1_right", "fig2", "fig3", "fig4"};
}

FigureTable figure_data(const std::string& name, std::size_t points) {
    if (points < 2) fail(Errc::InvalidArgument, "figure needs at least 2 points");
    if (name == "fig1_left") return fig1(name, Generator::clayton(1.0, 1.0), points);
    if (name == "fig1_right") return fig1(name, Generator::gumbel_barnett(0.5), points);
    if (name == "fig2") return fig2(points);
    if (name == "fig3") return fig3(points);
    if (name == "fig4") return fig4(points);
    fail(Errc::InvalidArgument, "unknown figure '" + name + "'");
}

std::string to_csv(const FigureTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace tterel
