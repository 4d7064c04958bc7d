"""圖表模組 - 由 CLI 輸出的 CSV 表格繪製 plotly 圖"""
import logging

import plotly.graph_objects as go
from plotly.subplots import make_subplots

import config
from bounds import QFT_SUCCESS_PROBABILITY

logger = logging.getLogger(__name__)


def create_transform_chart(transform_df, title="轉換後振幅"):
    """振幅模 |f̃(c)| 與相位 arg f̃(c)，峰值目標以紅點標示"""
    if transform_df.empty:
        return None

    peaks = transform_df[transform_df['is_peak']]
    fig = make_subplots(rows=2, cols=1, shared_xaxes=True,
                        subplot_titles=('振幅模 |f̃(c)|', '相位 arg f̃(c)'))

    fig.add_trace(
        go.Scatter(x=transform_df['c'], y=transform_df['abs_amplitude'], mode='lines',
                   name='|f̃(c)|', line=dict(color=config.CHART_COLORS['spectrum'], width=1)),
        row=1, col=1
    )
    fig.add_trace(
        go.Scatter(x=peaks['c'], y=peaks['abs_amplitude'], mode='markers',
                   name='峰值目標', marker=dict(color=config.CHART_COLORS['peak'], size=6)),
        row=1, col=1
    )
    fig.add_trace(
        go.Scatter(x=transform_df['c'], y=transform_df['phase'], mode='markers',
                   name='arg f̃(c)', marker=dict(color=config.CHART_COLORS['phase'], size=3)),
        row=2, col=1
    )

    fig.update_yaxes(range=[-3.2, 3.2], row=2, col=1)
    fig.update_xaxes(title_text='c', row=2, col=1)
    fig.update_layout(height=config.CHART_HEIGHT_LARGE, title_text=title, showlegend=True)
    return fig


def _quality_lines(df, x, title, x_title):
    fig = go.Figure()
    for delta, group in df.groupby('delta', sort=True):
        group = group.sort_values(x)
        fig.add_trace(go.Scatter(
            x=group[x], y=group['mean_Q'], mode='lines+markers', name=f'δ = {delta:g}',
            error_y=dict(type='data', array=group['stderr_Q'], visible=True),
        ))
    fig.add_hline(y=QFT_SUCCESS_PROBABILITY, line_dash='dash',
                  line_color=config.CHART_COLORS['bound'], annotation_text='4/π²')
    fig.update_layout(
        title=title,
        xaxis_title=x_title,
        yaxis_title='品質因子 Q',
        height=config.CHART_HEIGHT_DEFAULT,
        hovermode='x unified',
    )
    return fig


def create_quality_vs_m_chart(sweep_df):
    """Q 對近似階數 m，每個 δ 一條曲線"""
    if sweep_df.empty:
        return None
    L = int(sweep_df['L'].iloc[0])
    return _quality_lines(sweep_df, 'm', f'AQFT 品質因子 (L={L})', '近似階數 m')


def create_quality_vs_L_chart(scaling_df):
    """QFT 的 Q 對量子位元數 L"""
    if scaling_df.empty:
        return None
    return _quality_lines(scaling_df, 'L', 'QFT 品質因子隨 L 的變化', '量子位元數 L')


def create_bounds_chart(bounds_df):
    """AQFT 成功機率下界對 m，每個 L 一條曲線；無效列不繪製"""
    if bounds_df.empty:
        return None

    fig = go.Figure()
    valid = bounds_df[bounds_df['valid']]
    for L, group in valid.groupby('L', sort=True):
        fig.add_trace(go.Scatter(x=group['m'], y=group['prob_aqft_bound'],
                                 mode='lines+markers', name=f'L = {L}'))
    fig.add_hline(y=QFT_SUCCESS_PROBABILITY, line_dash='dash',
                  line_color=config.CHART_COLORS['bound'], annotation_text='QFT 4/π²')
    fig.update_layout(
        title='AQFT 成功機率下界',
        xaxis_title='近似階數 m',
        yaxis_title='下界',
        height=config.CHART_HEIGHT_DEFAULT,
    )
    return fig


def save_chart(fig, path):
    """輸出 HTML"""
    if fig is None:
        logger.warning(f"沒有資料，略過 {path}")
        return None
    fig.write_html(str(path))
    logger.info(f"圖表已寫入 {path}")
    return path
