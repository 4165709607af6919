#pragma once

#include <string>
#include <vector>

namespace tterel {

// One figure's curves as a column table ready for CSV output.
struct FigureTable {
    std::string name;
    std::vector<std::string> columns;            // first column is the abscissa
    std::vector<std::vector<double>> rows;
};

std::vector<std::string> figure_names();

// Curve data for one of the built-in figures:
//   fig1_left   hazards of X_1:2, X_1, X_2; Clayton W(t)=(1+t)^-1,
//               R_1=e^{2t}-1, R_2=e^t-1
//   fig1_right  same curves for W(t)=exp(2(1-e^t))
//   fig2        hazards of X_1:2 and X_2:2; W(x)=(1+3x)^-1/3,
//               R_1=(e^t-1)/10, R_2=t, on (0,5]
//   fig3        aircraft phi_1 (W_1=1/(1+x)), phi_2 (W_2=3/(3+x)) and their
//               ratio on (0,10]
//   fig4        residual reliabilities F_P,1 and F*_P,1 of the series over
//               {1,2} in a 3-component model, W=exp(2(1-e^x)),
//               R_1=(e^x-1)/10, R_2=(e^x-1)/5, R_3=x, t=1, plus their ratio
FigureTable figure_data(const std::string& name, std::size_t points = 512);

// CSV with full round-trip precision (17 significant digits).
std::string to_csv(const FigureTable& table);

}  // namespace tterel
